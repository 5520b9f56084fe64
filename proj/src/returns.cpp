/**
 * @file returns.cpp
 * @brief Log returns, moments and rank discretisation.
 */

#include "mstnet/returns.hpp"

#include "mstnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mstnet {

ReturnSeries log_returns(const PriceSeries& prices) {
    const auto& obs = prices.observations;
    if (obs.size() < 2) {
        throw InvalidArgument("log_returns: '" + prices.ticker + "' has fewer than 2 observations");
    }
    ReturnSeries out{prices.ticker, {}};
    out.values.reserve(obs.size() - 1);
    for (std::size_t t = 1; t < obs.size(); ++t) {
        if (!(obs[t - 1].close > 0.0) || !(obs[t].close > 0.0)) {
            throw InvalidArgument("log_returns: non-positive close in '" + prices.ticker + "'");
        }
        out.values.push_back(std::log(obs[t].close / obs[t - 1].close));
    }
    return out;
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidArgument("mean of an empty series");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    if (values.size() < 2) {
        throw InvalidArgument("stddev needs at least 2 values");
    }
    const double mu = mean(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mu) * (v - mu);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::vector<int> discretize(std::span<const double> values, int state_count) {
    if (state_count < 2) {
        throw InvalidArgument("state_count must be >= 2");
    }
    const std::size_t n = values.size();
    if (n < static_cast<std::size_t>(state_count)) {
        throw InvalidArgument("discretize: " + std::to_string(n) + " values for " +
                              std::to_string(state_count) + " states");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<int> symbols(n);
    const auto k = static_cast<std::size_t>(state_count);
    for (std::size_t rank = 0; rank < n; ++rank) {
        symbols[order[rank]] = static_cast<int>(rank * k / n);
    }
    return symbols;
}

DiscreteSeries discretize_quartiles(const ReturnSeries& returns, int state_count) {
    return {returns.ticker, state_count, discretize(returns.values, state_count)};
}

} // namespace mstnet
