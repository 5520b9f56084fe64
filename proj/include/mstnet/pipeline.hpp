/**
 * @file pipeline.hpp
 * @brief End-to-end yearly analysis: panels, networks, centrality, entropy and roll-ups.
 */

#pragma once

#include "mstnet/analytics.hpp"
#include "mstnet/config.hpp"
#include "mstnet/error.hpp"
#include "mstnet/depnet.hpp"
#include "mstnet/ingest.hpp"
#include "mstnet/report.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mstnet {

inline constexpr const char* kToolVersion = "1.0.0";

/// Failure inside one stage of the pipeline, tagged with where it happened.
class StageError : public Error {
public:
    StageError(std::string stage, int year, const std::string& message)
        : Error(stage + (year ? " (year " + std::to_string(year) + ")" : std::string()) + ": " + message),
          stage_(std::move(stage)), year_(year) {}

    const std::string& stage() const noexcept { return stage_; }
    int year() const noexcept { return year_; }

private:
    std::string stage_;
    int year_;
};

struct YearResult {
    int year = 0;
    std::size_t trading_days = 0;
    CorrelationMatrix correlation;
    DistanceMatrix distance;
    SpanningTree tree;
    std::vector<StockMetrics> metrics;  // sorted by ticker
};

struct AnalysisResult {
    std::size_t loaded_count = 0;
    std::size_t eligible_count = 0;
    std::vector<YearResult> years;
    std::vector<StockMetrics> metrics;  // by (year, ticker)
    std::vector<SectorSummary> sectors;
    std::vector<MarketSummary> markets;
    CorrelationReport correlations;
    std::map<int, std::size_t> panel_sizes;  // complete series per year before variance screening
    std::vector<std::string> warnings;
    std::map<std::string, double> timings_ms;
};

/**
 * Runs the yearly pipeline over already-loaded, sector-labelled prices.
 * Years with fewer than three usable series are skipped with a warning.
 */
AnalysisResult analyze(const std::vector<PriceSeries>& prices, const AnalysisConfig& cfg);

/// Writes trees, metric CSVs, summaries and correlations.json; returns the file names.
std::vector<std::string> write_outputs(const AnalysisResult& result, const AnalysisConfig& cfg,
                                       const std::filesystem::path& out_dir);

struct RunManifest {
    std::map<std::string, std::string> config;
    std::map<std::string, std::string> input_digests;  // path -> sha256 hex
    std::string tool_version = kToolVersion;
    std::map<std::string, double> timings_ms;
};

void write_manifest(std::ostream& out, const RunManifest& manifest);

std::string sha256_file(const std::filesystem::path& path);

} // namespace mstnet
