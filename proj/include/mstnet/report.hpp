/**
 * @file report.hpp
 * @brief CSV, DOT and JSON writers for pipeline outputs.
 *
 * Every real is printed with 12 significant digits.
 */

#pragma once

#include "mstnet/analytics.hpp"
#include "mstnet/depnet.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mstnet {

std::string format_real(double value);

struct NodeAttributes {
    std::string sector;
    double mean_return = 0.0;
};

/// `ticker,date,close` rows, series in the given order.
void write_prices_csv(std::ostream& out, const std::vector<PriceSeries>& series);
void write_sectors_csv(std::ostream& out, const SectorMap& sectors);

/// One undirected graph; nodes carry sector and mean_return, edges weight and rho.
void write_tree_dot(std::ostream& out, const SpanningTree& tree, const std::string& graph_name,
                    const std::map<std::string, NodeAttributes>& attributes = {});

void write_stock_metrics_csv(std::ostream& out, const std::vector<StockMetrics>& metrics);
void write_centrality_csv(std::ostream& out, const std::vector<StockMetrics>& metrics);
void write_entropy_csv(std::ostream& out, const std::vector<StockMetrics>& metrics);
void write_sector_summaries_csv(std::ostream& out, const std::vector<SectorSummary>& rows);
void write_market_summaries_csv(std::ostream& out, const std::vector<MarketSummary>& rows);

struct CorrelationReport {
    std::optional<double> all;
    std::optional<double> top;
    std::size_t k = 100;
};

/// {"all": v, "top<k>": v, "k": k}; undefined correlations are written as null.
void write_correlations_json(std::ostream& out, const CorrelationReport& report);

} // namespace mstnet
