/**
 * @file analytics.cpp
 * @brief Sector/market aggregation and cross-metric correlation.
 */

#include "mstnet/analytics.hpp"

#include "mstnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace mstnet {

namespace {

std::vector<const StockMetrics*> for_year(const std::vector<StockMetrics>& metrics, int year) {
    std::vector<const StockMetrics*> rows;
    for (const auto& m : metrics) {
        if (m.year == year) {
            rows.push_back(&m);
        }
    }
    if (rows.empty()) {
        throw InvalidArgument("no stock metrics for year " + std::to_string(year));
    }
    return rows;
}

} // namespace

std::vector<SectorSummary> sector_summaries(const std::vector<StockMetrics>& metrics, int year) {
    std::map<std::string, SectorSummary> groups;
    for (const auto* m : for_year(metrics, year)) {
        auto& g = groups[m->sector];
        g.year = year;
        g.sector = m->sector;
        g.agg_centrality += m->centrality;
        g.avg_mean_return += m->mean_return;
        g.avg_sd_return += m->sd_return;
        g.avg_entropy += m->entropy_bits;
        ++g.member_count;
    }
    std::vector<SectorSummary> out;
    out.reserve(groups.size());
    for (auto& [sector, g] : groups) {
        const auto count = static_cast<double>(g.member_count);
        g.avg_centrality = g.agg_centrality / count;
        g.avg_mean_return /= count;
        g.avg_sd_return /= count;
        g.avg_entropy /= count;
        out.push_back(g);
    }
    return out;
}

MarketSummary market_summary(const std::vector<StockMetrics>& metrics, int year) {
    const auto rows = for_year(metrics, year);
    MarketSummary s;
    s.year = year;
    s.stock_count = rows.size();
    double weight_total = 0.0;
    for (const auto* m : rows) {
        if (!(m->centrality > 0.0)) {
            throw InvalidArgument("non-positive centrality for '" + m->ticker + "'");
        }
        s.avg_mean_return += m->mean_return;
        s.avg_sd += m->sd_return;
        s.avg_entropy += m->entropy_bits;
        s.w_mean_return += m->centrality * m->mean_return;
        s.w_sd += m->centrality * m->sd_return;
        s.w_entropy += m->centrality * m->entropy_bits;
        weight_total += m->centrality;
    }
    const auto count = static_cast<double>(rows.size());
    s.avg_mean_return /= count;
    s.avg_sd /= count;
    s.avg_entropy /= count;
    s.w_mean_return /= weight_total;
    s.w_sd /= weight_total;
    s.w_entropy /= weight_total;
    return s;
}

double weighted_market_mean(const std::vector<TickerValue>& values, const CentralityVector& weights) {
    if (values.empty()) {
        throw InvalidArgument("weighted mean of no values");
    }
    if (values.size() != weights.tickers.size()) {
        throw InvalidArgument("ticker sets differ: " + std::to_string(values.size()) + " values, " +
                              std::to_string(weights.tickers.size()) + " weights");
    }
    std::map<std::string, double> by_ticker;
    for (std::size_t i = 0; i < weights.tickers.size(); ++i) {
        if (!(weights.scores[i] > 0.0)) {
            throw InvalidArgument("weight for '" + weights.tickers[i] + "' is not positive");
        }
        by_ticker[weights.tickers[i]] = weights.scores[i];
    }
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& v : values) {
        auto it = by_ticker.find(v.ticker);
        if (it == by_ticker.end()) {
            throw InvalidArgument("no weight for ticker '" + v.ticker + "'");
        }
        numerator += it->second * v.value;
        denominator += it->second;
        by_ticker.erase(it);
    }
    if (!by_ticker.empty()) {
        throw InvalidArgument("value missing for ticker '" + by_ticker.begin()->first + "'");
    }
    return numerator / denominator;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgument("pearson needs two samples of equal size >= 2");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw InvalidArgument("pearson of a constant sample is undefined");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<StockMetrics> top_k_by_centrality(const std::vector<StockMetrics>& metrics, std::size_t k) {
    std::vector<StockMetrics> sorted = metrics;
    std::sort(sorted.begin(), sorted.end(), [](const StockMetrics& a, const StockMetrics& b) {
        if (a.centrality != b.centrality) {
            return a.centrality > b.centrality;
        }
        return std::tie(a.year, a.ticker) < std::tie(b.year, b.ticker);
    });
    if (sorted.size() > k) {
        sorted.resize(k);
    }
    return sorted;
}

double metric_correlation(const std::vector<StockMetrics>& metrics, MetricSelector selector) {
    auto selected = selector.top_k ? top_k_by_centrality(metrics, *selector.top_k) : metrics;
    // Canonical order so the floating-point sums do not depend on input order.
    std::sort(selected.begin(), selected.end(), [](const StockMetrics& a, const StockMetrics& b) {
        return std::tie(a.year, a.ticker) < std::tie(b.year, b.ticker);
    });
    if (selected.size() < 3) {
        throw InvalidArgument("metric_correlation needs at least 3 points, got " + std::to_string(selected.size()));
    }
    std::vector<double> entropy, sd;
    entropy.reserve(selected.size());
    sd.reserve(selected.size());
    for (const auto& m : selected) {
        entropy.push_back(m.entropy_bits);
        sd.push_back(m.sd_return);
    }
    return pearson(entropy, sd);
}

} // namespace mstnet
