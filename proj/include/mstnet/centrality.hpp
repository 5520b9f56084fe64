/**
 * @file centrality.hpp
 * @brief Markov centrality of tree nodes from the random walk's mean first-passage times.
 *
 * The walk moves uniformly to a neighbour. With P the transition matrix and
 * pi its stationary distribution, the fundamental matrix is
 * Z = (I - P + 1 pi^T)^-1 and the first-passage matrix is
 * M = (I - Z + E Z_dg) D with D = diag(1/pi). A node's centrality is
 * n / (column sum of M), diagonal recurrence time included.
 */

#pragma once

#include "mstnet/depnet.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace mstnet {

struct TransitionMatrix {
    std::vector<std::string> nodes;
    Eigen::MatrixXd entries;
};

struct StationaryDistribution {
    Eigen::VectorXd probabilities;
};

struct MfptMatrix {
    Eigen::MatrixXd entries;  // entries(s, v): expected steps from s to first reach v
};

struct CentralityVector {
    std::vector<std::string> tickers;
    std::vector<double> scores;

    double at(const std::string& ticker) const;
};

TransitionMatrix walk_transition(const SpanningTree& tree);

/// deg(v) / (2 (n-1)); throws NumericalError if ||pi P - pi||_max > 1e-10.
StationaryDistribution stationary(const TransitionMatrix& p, const SpanningTree& tree);

/// LU solve of (I - P + Pi); throws NumericalError if the residual exceeds 1e-9.
Eigen::MatrixXd fundamental_matrix(const TransitionMatrix& p, const StationaryDistribution& pi);

MfptMatrix mfpt(const Eigen::MatrixXd& z, const StationaryDistribution& pi);

CentralityVector markov_centrality(const MfptMatrix& m, const std::vector<std::string>& nodes);

/// Full chain: transition, stationary, fundamental matrix, MFPT, centrality.
CentralityVector tree_centrality(const SpanningTree& tree);

} // namespace mstnet
