/**
 * @file entropy.hpp
 * @brief Lempel-Ziv match-length entropy-rate estimator (growing window).
 */

#pragma once

#include "mstnet/returns.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mstnet {

struct EntropyEstimate {
    double bits = 0.0;  // bits per symbol
    std::size_t n = 0;
};

/**
 * Lambda[i] is one more than the longest match of symbols[i..] lying wholly
 * inside symbols[0..i-1]; so lambda[0] == 1, and a suffix that is fully
 * matched gets its length plus one.
 *
 * The history is held in a suffix automaton extended one symbol per step;
 * each position walks its match from the root, so total work is linear in n
 * plus the sum of match lengths.
 */
std::vector<std::int64_t> lambda_lengths(std::span<const int> symbols);

/// n log2(n) / sum(lambda). Needs n >= 2.
EntropyEstimate entropy_rate_lz(std::span<const int> symbols);

inline EntropyEstimate entropy_rate_lz(const DiscreteSeries& series) {
    return entropy_rate_lz(std::span<const int>(series.symbols));
}

} // namespace mstnet
