/**
 * @file config.hpp
 * @brief `key=value` run configuration for the analyze pipeline.
 */

#pragma once

#include "mstnet/depnet.hpp"
#include "mstnet/ingest.hpp"

#include <cstddef>
#include <istream>
#include <map>
#include <string>

namespace mstnet {

/// Environment variable naming the default config file for the CLI.
inline constexpr const char* kConfigEnvVar = "MSTNET_CONFIG";

struct AnalysisConfig {
    PanelConfig panel;
    std::size_t top_k = 100;
    DistanceMetric metric = DistanceMetric::squared_correlation;
    int jobs = 1;
    bool write_matrices = false;

    void validate() const;
    /// Stable key=value rendering, also embedded in the run manifest.
    std::map<std::string, std::string> snapshot() const;
};

/// Parses "A:B" (or a single year "A").
YearRange parse_year_range(const std::string& text);

/**
 * Applies `key=value` lines onto `cfg`. Blank lines and `#` comments are
 * skipped. Recognised keys: min_consecutive_days, years, state_count,
 * sector_map, top_k, alt_distance, jobs, write_matrices.
 */
void read_config(std::istream& in, AnalysisConfig& cfg);

} // namespace mstnet
