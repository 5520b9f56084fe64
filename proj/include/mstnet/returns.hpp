/**
 * @file returns.hpp
 * @brief Log returns, moments and equal-population discretisation.
 */

#pragma once

#include "mstnet/ingest.hpp"

#include <span>
#include <string>
#include <vector>

namespace mstnet {

struct ReturnSeries {
    std::string ticker;
    std::vector<double> values;
};

/// Symbols in [0, state_count), one per return.
struct DiscreteSeries {
    std::string ticker;
    int state_count = 4;
    std::vector<int> symbols;
};

/// values[t] = ln(close[t+1] / close[t]). Needs at least two observations.
ReturnSeries log_returns(const PriceSeries& prices);

double mean(std::span<const double> values);

/// Sample standard deviation (divisor n - 1). Needs at least two values.
double stddev(std::span<const double> values);

/**
 * Assigns each value to one of `state_count` equal-population states by rank.
 *
 * Values are stably sorted; the value of rank r gets state floor(r * k / n).
 * Ties are therefore split by position, earlier indices filling lower states,
 * and populations never differ by more than one.
 */
std::vector<int> discretize(std::span<const double> values, int state_count);

DiscreteSeries discretize_quartiles(const ReturnSeries& returns, int state_count = 4);

} // namespace mstnet
