/**
 * @file analytics.hpp
 * @brief Sector and market roll-ups of per-stock metrics.
 */

#pragma once

#include "mstnet/centrality.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mstnet {

struct StockMetrics {
    int year = 0;
    std::string ticker;
    std::string sector;
    double mean_return = 0.0;
    double sd_return = 0.0;
    double entropy_bits = 0.0;
    double centrality = 0.0;
    std::size_t n_returns = 0;
};

struct SectorSummary {
    int year = 0;
    std::string sector;
    double avg_centrality = 0.0;
    double agg_centrality = 0.0;
    double avg_mean_return = 0.0;
    double avg_sd_return = 0.0;
    double avg_entropy = 0.0;
    std::size_t member_count = 0;
};

/// Unweighted averages and their centrality-weighted counterparts (w_*).
struct MarketSummary {
    int year = 0;
    std::size_t stock_count = 0;
    double avg_mean_return = 0.0;
    double w_mean_return = 0.0;
    double avg_sd = 0.0;
    double w_sd = 0.0;
    double avg_entropy = 0.0;
    double w_entropy = 0.0;
};

/// Per-sector rows for `year`, sorted by sector name. Throws if the year has no metrics.
std::vector<SectorSummary> sector_summaries(const std::vector<StockMetrics>& metrics, int year);

MarketSummary market_summary(const std::vector<StockMetrics>& metrics, int year);

struct TickerValue {
    std::string ticker;
    double value = 0.0;
};

/// sum(w x) / sum(w). Ticker sets must match exactly; weights must be positive.
double weighted_market_mean(const std::vector<TickerValue>& values, const CentralityVector& weights);

struct MetricSelector {
    /// nullopt: every point. Otherwise the k points of highest centrality.
    std::optional<std::size_t> top_k;

    static MetricSelector all() { return {}; }
    static MetricSelector top(std::size_t k) { return {k}; }
};

/// Points sorted by centrality descending, ties by (year, ticker), first k kept.
std::vector<StockMetrics> top_k_by_centrality(const std::vector<StockMetrics>& metrics, std::size_t k);

/// Pearson correlation of entropy_bits against sd_return over the selected stock-years.
double metric_correlation(const std::vector<StockMetrics>& metrics, MetricSelector selector);

/// Sample Pearson coefficient of two equally sized samples; throws on constant input or n < 2.
double pearson(std::span<const double> x, std::span<const double> y);

} // namespace mstnet
