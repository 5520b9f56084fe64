/**
 * @file depnet.hpp
 * @brief Correlation/distance matrices and the minimal spanning tree over them.
 */

#pragma once

#include "mstnet/returns.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace mstnet {

struct CorrelationMatrix {
    std::vector<std::string> tickers;
    Eigen::MatrixXd entries;

    Eigen::Index size() const { return entries.rows(); }
};

enum class DistanceMetric {
    /// d = 1 - rho^2
    squared_correlation,
    /// d = sqrt(2 (1 - rho))
    euclidean_correlation,
};

struct DistanceMatrix {
    std::vector<std::string> tickers;
    Eigen::MatrixXd entries;
    DistanceMetric metric = DistanceMetric::squared_correlation;

    Eigen::Index size() const { return entries.rows(); }
};

struct TreeEdge {
    int u = 0;  // index into SpanningTree::nodes, u < v
    int v = 0;
    double weight = 0.0;
    double rho = 0.0;
};

struct SpanningTree {
    std::vector<std::string> nodes;
    std::vector<TreeEdge> edges;

    double total_weight() const;
    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;
};

/// Sample Pearson coefficients of aligned series. Zero-variance series raise InvalidArgument naming the ticker.
CorrelationMatrix pearson_matrix(const std::vector<ReturnSeries>& panel);

DistanceMatrix to_distance(const CorrelationMatrix& corr,
                           DistanceMetric metric = DistanceMetric::squared_correlation);

/**
 * Kruskal over the complete graph: candidate edges ascending by weight, ties by
 * (smaller ticker, larger ticker), accepted when they join two components.
 * Edge `rho` is NaN unless the overload with the correlation matrix is used.
 */
SpanningTree build_mst(const DistanceMatrix& dist);
SpanningTree build_mst(const DistanceMatrix& dist, const CorrelationMatrix& corr);

/// Throws NumericalError when the tree is not a spanning tree over its nodes.
void validate_tree(const SpanningTree& tree);

/// Matrix CSV: header row and first column hold tickers.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& tickers, const Eigen::MatrixXd& m);
CorrelationMatrix read_correlation_csv(std::istream& in);
DistanceMatrix read_distance_csv(std::istream& in);

} // namespace mstnet
