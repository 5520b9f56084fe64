/**
 * @file centrality.cpp
 * @brief Random walk on a spanning tree and its Markov centrality.
 */

#include "mstnet/centrality.hpp"

#include "mstnet/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace mstnet {

namespace {

constexpr double kStationaryResidual = 1e-10;
constexpr double kFundamentalResidual = 1e-9;

} // namespace

double CentralityVector::at(const std::string& ticker) const {
    auto it = std::find(tickers.begin(), tickers.end(), ticker);
    if (it == tickers.end()) {
        throw InvalidArgument("no centrality for '" + ticker + "'");
    }
    return scores[static_cast<std::size_t>(it - tickers.begin())];
}

TransitionMatrix walk_transition(const SpanningTree& tree) {
    validate_tree(tree);
    const auto n = static_cast<Eigen::Index>(tree.nodes.size());
    const auto adj = tree.adjacency();
    TransitionMatrix p{tree.nodes, Eigen::MatrixXd::Zero(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& neighbours = adj[static_cast<std::size_t>(i)];
        const double step = 1.0 / static_cast<double>(neighbours.size());
        for (int j : neighbours) {
            p.entries(i, j) = step;
        }
    }
    return p;
}

StationaryDistribution stationary(const TransitionMatrix& p, const SpanningTree& tree) {
    const auto deg = tree.degrees();
    const auto n = static_cast<Eigen::Index>(deg.size());
    if (p.entries.rows() != n) {
        throw InvalidArgument("transition matrix and tree sizes differ");
    }
    const double total = 2.0 * static_cast<double>(n - 1);
    StationaryDistribution pi{Eigen::VectorXd(n)};
    for (Eigen::Index v = 0; v < n; ++v) {
        pi.probabilities(v) = deg[static_cast<std::size_t>(v)] / total;
    }
    const double residual = (pi.probabilities.transpose() * p.entries - pi.probabilities.transpose())
                                .cwiseAbs()
                                .maxCoeff();
    if (residual > kStationaryResidual) {
        throw NumericalError("stationary residual " + std::to_string(residual) + " exceeds tolerance");
    }
    return pi;
}

Eigen::MatrixXd fundamental_matrix(const TransitionMatrix& p, const StationaryDistribution& pi) {
    const Eigen::Index n = p.entries.rows();
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd projector = Eigen::VectorXd::Ones(n) * pi.probabilities.transpose();
    const Eigen::MatrixXd system = identity - p.entries + projector;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    Eigen::MatrixXd z = lu.solve(identity);
    const double residual = (system * z - identity).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual) || residual > kFundamentalResidual) {
        throw NumericalError("fundamental matrix residual " + std::to_string(residual) + " exceeds tolerance");
    }
    return z;
}

MfptMatrix mfpt(const Eigen::MatrixXd& z, const StationaryDistribution& pi) {
    const Eigen::Index n = z.rows();
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, n);
    const Eigen::MatrixXd z_dg = z.diagonal().asDiagonal();
    const Eigen::MatrixXd d = pi.probabilities.cwiseInverse().asDiagonal();
    return {(identity - z + ones * z_dg) * d};
}

CentralityVector markov_centrality(const MfptMatrix& m, const std::vector<std::string>& nodes) {
    const Eigen::Index n = m.entries.rows();
    if (static_cast<std::size_t>(n) != nodes.size()) {
        throw InvalidArgument("MFPT matrix and node list sizes differ");
    }
    CentralityVector out{nodes, std::vector<double>(nodes.size())};
    const Eigen::RowVectorXd column_sums = m.entries.colwise().sum();
    for (Eigen::Index v = 0; v < n; ++v) {
        out.scores[static_cast<std::size_t>(v)] = static_cast<double>(n) / column_sums(v);
    }
    return out;
}

CentralityVector tree_centrality(const SpanningTree& tree) {
    const auto p = walk_transition(tree);
    const auto pi = stationary(p, tree);
    const auto z = fundamental_matrix(p, pi);
    return markov_centrality(mfpt(z, pi), tree.nodes);
}

} // namespace mstnet
