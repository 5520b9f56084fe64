/**
 * @file report.cpp
 * @brief Text serialisation of trees, metrics and summaries.
 */

#include "mstnet/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace mstnet {

std::string format_real(double value) {
    if (value == 0.0) {
        return "0";  // folds -0
    }
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

void write_prices_csv(std::ostream& out, const std::vector<PriceSeries>& series) {
    out << "ticker,date,close\n";
    for (const auto& s : series) {
        for (const auto& o : s.observations) {
            out << s.ticker << ',' << format_iso_date(o.date) << ',' << format_real(o.close) << '\n';
        }
    }
}

void write_sectors_csv(std::ostream& out, const SectorMap& sectors) {
    out << "ticker,sector\n";
    for (const auto& [ticker, sector] : sectors) {
        out << ticker << ',' << sector << '\n';
    }
}

void write_tree_dot(std::ostream& out, const SpanningTree& tree, const std::string& graph_name,
                    const std::map<std::string, NodeAttributes>& attributes) {
    out << "graph " << quoted(graph_name) << " {\n";
    for (const auto& node : tree.nodes) {
        out << "  " << quoted(node);
        auto it = attributes.find(node);
        if (it != attributes.end()) {
            out << " [sector=" << quoted(it->second.sector) << ", mean_return=" << format_real(it->second.mean_return)
                << "]";
        }
        out << ";\n";
    }
    for (const auto& e : tree.edges) {
        out << "  " << quoted(tree.nodes[static_cast<std::size_t>(e.u)]) << " -- "
            << quoted(tree.nodes[static_cast<std::size_t>(e.v)]) << " [weight=" << format_real(e.weight);
        if (!std::isnan(e.rho)) {
            out << ", rho=" << format_real(e.rho);
        }
        out << "];\n";
    }
    out << "}\n";
}

void write_stock_metrics_csv(std::ostream& out, const std::vector<StockMetrics>& metrics) {
    out << "year,ticker,sector,mean_return,sd_return,entropy_rate_bits,markov_centrality,n_returns\n";
    for (const auto& m : metrics) {
        out << m.year << ',' << m.ticker << ',' << m.sector << ',' << format_real(m.mean_return) << ','
            << format_real(m.sd_return) << ',' << format_real(m.entropy_bits) << ',' << format_real(m.centrality)
            << ',' << m.n_returns << '\n';
    }
}

void write_centrality_csv(std::ostream& out, const std::vector<StockMetrics>& metrics) {
    out << "year,ticker,sector,markov_centrality\n";
    for (const auto& m : metrics) {
        out << m.year << ',' << m.ticker << ',' << m.sector << ',' << format_real(m.centrality) << '\n';
    }
}

void write_entropy_csv(std::ostream& out, const std::vector<StockMetrics>& metrics) {
    out << "year,ticker,sector,entropy_rate_bits\n";
    for (const auto& m : metrics) {
        out << m.year << ',' << m.ticker << ',' << m.sector << ',' << format_real(m.entropy_bits) << '\n';
    }
}

void write_sector_summaries_csv(std::ostream& out, const std::vector<SectorSummary>& rows) {
    out << "year,sector,member_count,avg_centrality,agg_centrality,avg_mean_return,avg_sd_return,avg_entropy\n";
    for (const auto& r : rows) {
        out << r.year << ',' << r.sector << ',' << r.member_count << ',' << format_real(r.avg_centrality) << ','
            << format_real(r.agg_centrality) << ',' << format_real(r.avg_mean_return) << ','
            << format_real(r.avg_sd_return) << ',' << format_real(r.avg_entropy) << '\n';
    }
}

void write_market_summaries_csv(std::ostream& out, const std::vector<MarketSummary>& rows) {
    out << "year,stock_count,avg_mean_return,w_mean_return,avg_sd,w_sd,avg_entropy,w_entropy\n";
    for (const auto& r : rows) {
        out << r.year << ',' << r.stock_count << ',' << format_real(r.avg_mean_return) << ','
            << format_real(r.w_mean_return) << ',' << format_real(r.avg_sd) << ',' << format_real(r.w_sd) << ','
            << format_real(r.avg_entropy) << ',' << format_real(r.w_entropy) << '\n';
    }
}

void write_correlations_json(std::ostream& out, const CorrelationReport& report) {
    auto value = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string("null"); };
    out << "{\"all\": " << value(report.all) << ", \"top" << report.k << "\": " << value(report.top)
        << ", \"k\": " << report.k << "}\n";
}

} // namespace mstnet
