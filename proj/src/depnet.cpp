/**
 * @file depnet.cpp
 * @brief Pearson matrix, correlation distance and Kruskal spanning tree.
 */

#include "mstnet/depnet.hpp"

#include "disjoint_set.hpp"
#include "mstnet/error.hpp"
#include "mstnet/report.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>

namespace mstnet {

namespace {

constexpr double kClampSlack = 1e-12;

void require_distinct(const std::vector<std::string>& tickers) {
    std::set<std::string> seen;
    for (const auto& t : tickers) {
        if (!seen.insert(t).second) {
            throw InvalidArgument("duplicate ticker '" + t + "'");
        }
    }
}

} // namespace

double SpanningTree::total_weight() const {
    double total = 0.0;
    for (const auto& e : edges) {
        total += e.weight;
    }
    return total;
}

std::vector<std::vector<int>> SpanningTree::adjacency() const {
    std::vector<std::vector<int>> adj(nodes.size());
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
    }
    return adj;
}

std::vector<int> SpanningTree::degrees() const {
    std::vector<int> deg(nodes.size(), 0);
    for (const auto& e : edges) {
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
    }
    return deg;
}

CorrelationMatrix pearson_matrix(const std::vector<ReturnSeries>& panel) {
    if (panel.size() < 2) {
        throw InvalidArgument("pearson_matrix needs at least 2 series");
    }
    const std::size_t length = panel.front().values.size();
    if (length < 2) {
        throw InvalidArgument("pearson_matrix needs at least 2 aligned observations");
    }
    const auto n = static_cast<Eigen::Index>(panel.size());
    const auto len = static_cast<Eigen::Index>(length);

    CorrelationMatrix out;
    Eigen::MatrixXd centered(len, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& s = panel[static_cast<std::size_t>(j)];
        if (s.values.size() != length) {
            throw InvalidArgument("series '" + s.ticker + "' has " + std::to_string(s.values.size()) +
                                  " values, expected " + std::to_string(length));
        }
        const bool constant = std::all_of(s.values.begin(), s.values.end(),
                                          [&](double v) { return v == s.values.front(); });
        if (constant) {
            throw InvalidArgument("series '" + s.ticker + "' has zero variance; correlation undefined");
        }
        out.tickers.push_back(s.ticker);
        const double mu = mean(s.values);
        for (Eigen::Index t = 0; t < len; ++t) {
            centered(t, j) = s.values[static_cast<std::size_t>(t)] - mu;
        }
    }
    require_distinct(out.tickers);

    const Eigen::MatrixXd cross = centered.transpose() * centered;
    const Eigen::VectorXd scale = cross.diagonal().cwiseSqrt().cwiseInverse();
    out.entries = scale.asDiagonal() * cross * scale.asDiagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
        out.entries(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double rho = 0.5 * (out.entries(i, j) + out.entries(j, i));
            if (std::abs(rho) > 1.0 + kClampSlack) {
                throw NumericalError("correlation " + std::to_string(rho) + " outside [-1, 1] for (" +
                                     out.tickers[static_cast<std::size_t>(i)] + ", " +
                                     out.tickers[static_cast<std::size_t>(j)] + ")");
            }
            rho = std::clamp(rho, -1.0, 1.0);
            out.entries(i, j) = rho;
            out.entries(j, i) = rho;
        }
    }
    return out;
}

DistanceMatrix to_distance(const CorrelationMatrix& corr, DistanceMetric metric) {
    DistanceMatrix out{corr.tickers, Eigen::MatrixXd(corr.size(), corr.size()), metric};
    for (Eigen::Index i = 0; i < corr.size(); ++i) {
        for (Eigen::Index j = 0; j < corr.size(); ++j) {
            const double rho = corr.entries(i, j);
            double d = 0.0;
            if (i != j) {
                d = metric == DistanceMetric::squared_correlation ? 1.0 - rho * rho
                                                                  : std::sqrt(std::max(0.0, 2.0 * (1.0 - rho)));
            }
            out.entries(i, j) = d;
        }
    }
    return out;
}

SpanningTree build_mst(const DistanceMatrix& dist) {
    const auto n = static_cast<std::size_t>(dist.size());
    if (n < 2) {
        throw InvalidArgument("build_mst needs at least 2 nodes");
    }
    if (dist.tickers.size() != n || dist.entries.cols() != dist.entries.rows()) {
        throw InvalidArgument("distance matrix shape does not match its ticker list");
    }
    require_distinct(dist.tickers);

    // Position of each ticker in lexicographic order, for tie-breaking.
    std::vector<std::size_t> by_name(n);
    std::iota(by_name.begin(), by_name.end(), std::size_t{0});
    std::sort(by_name.begin(), by_name.end(),
              [&](std::size_t a, std::size_t b) { return dist.tickers[a] < dist.tickers[b]; });
    std::vector<std::size_t> name_rank(n);
    for (std::size_t r = 0; r < n; ++r) {
        name_rank[by_name[r]] = r;
    }

    struct Candidate {
        double weight;
        std::size_t lo_rank, hi_rank;
        int u, v;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = dist.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (!std::isfinite(w)) {
                throw InvalidArgument("non-finite distance between '" + dist.tickers[i] + "' and '" +
                                      dist.tickers[j] + "'");
            }
            candidates.push_back({w, std::min(name_rank[i], name_rank[j]), std::max(name_rank[i], name_rank[j]),
                                  static_cast<int>(i), static_cast<int>(j)});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.weight, a.lo_rank, a.hi_rank) < std::tie(b.weight, b.lo_rank, b.hi_rank);
    });

    SpanningTree tree{dist.tickers, {}};
    tree.edges.reserve(n - 1);
    detail::DisjointSet components(n);
    for (const auto& c : candidates) {
        if (components.unite(static_cast<std::size_t>(c.u), static_cast<std::size_t>(c.v))) {
            tree.edges.push_back({c.u, c.v, c.weight, std::numeric_limits<double>::quiet_NaN()});
            if (tree.edges.size() == n - 1) {
                break;
            }
        }
    }
    return tree;
}

SpanningTree build_mst(const DistanceMatrix& dist, const CorrelationMatrix& corr) {
    if (corr.tickers != dist.tickers) {
        throw InvalidArgument("correlation and distance matrices have different tickers");
    }
    SpanningTree tree = build_mst(dist);
    for (auto& e : tree.edges) {
        e.rho = corr.entries(e.u, e.v);
    }
    return tree;
}

void validate_tree(const SpanningTree& tree) {
    const std::size_t n = tree.nodes.size();
    if (n < 2 || tree.edges.size() != n - 1) {
        throw NumericalError("tree over " + std::to_string(n) + " nodes has " + std::to_string(tree.edges.size()) +
                             " edges");
    }
    detail::DisjointSet components(n);
    for (const auto& e : tree.edges) {
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n || static_cast<std::size_t>(e.v) >= n ||
            e.u == e.v) {
            throw NumericalError("tree edge has invalid endpoints");
        }
        if (!components.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
            throw NumericalError("tree contains a cycle");
        }
    }
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& tickers, const Eigen::MatrixXd& m) {
    out << "ticker";
    for (const auto& t : tickers) {
        out << ',' << t;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << tickers[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << ',' << format_real(m(i, j));
        }
        out << '\n';
    }
}

namespace {

std::pair<std::vector<std::string>, Eigen::MatrixXd> read_matrix_csv(std::istream& in) {
    std::string line;
    std::size_t row = 0;
    std::vector<std::string> tickers;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++row;
        auto fields = detail::split_csv_line(line);
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (tickers.empty()) {
            if (fields.size() < 3) {
                throw ParseError(row, "matrix header needs a corner cell and at least 2 tickers");
            }
            tickers.assign(fields.begin() + 1, fields.end());
            continue;
        }
        if (fields.size() != tickers.size() + 1) {
            throw ParseError(row, "expected " + std::to_string(tickers.size() + 1) + " fields");
        }
        if (rows.size() >= tickers.size() || fields[0] != tickers[rows.size()]) {
            throw ParseError(row, "row label '" + fields[0] + "' does not match the header order");
        }
        std::vector<double> values;
        for (std::size_t k = 1; k < fields.size(); ++k) {
            auto v = detail::parse_double(fields[k]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError(row, "unparseable value '" + fields[k] + "'");
            }
            values.push_back(*v);
        }
        rows.push_back(std::move(values));
    }
    if (tickers.empty() || rows.size() != tickers.size()) {
        throw ParseError(row, "matrix is not square");
    }
    const auto n = static_cast<Eigen::Index>(tickers.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidArgument("matrix is not symmetric");
    }
    return {tickers, m};
}

} // namespace

CorrelationMatrix read_correlation_csv(std::istream& in) {
    auto [tickers, m] = read_matrix_csv(in);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (m(i, i) != 1.0) {
            throw InvalidArgument("correlation diagonal must be 1");
        }
    }
    if (m.cwiseAbs().maxCoeff() > 1.0) {
        throw InvalidArgument("correlation entries must lie in [-1, 1]");
    }
    return {tickers, m};
}

DistanceMatrix read_distance_csv(std::istream& in) {
    auto [tickers, m] = read_matrix_csv(in);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (m(i, i) != 0.0) {
            throw InvalidArgument("distance diagonal must be 0");
        }
    }
    if (m.minCoeff() < 0.0) {
        throw InvalidArgument("distances must be non-negative");
    }
    return {tickers, m, DistanceMetric::squared_correlation};
}

} // namespace mstnet
