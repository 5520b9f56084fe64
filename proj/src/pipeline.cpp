/**
 * @file pipeline.cpp
 * @brief Per-year orchestration of the market-structure analysis.
 */

#include "mstnet/pipeline.hpp"

#include "mstnet/centrality.hpp"
#include "mstnet/entropy.hpp"
#include "mstnet/error.hpp"
#include "mstnet/returns.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <thread>
#include <tuple>

namespace mstnet {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct YearOutcome {
    std::optional<YearResult> result;
    std::optional<std::size_t> panel_size;
    std::vector<std::string> warnings;
    std::map<std::string, double> timings_ms;
};

template <typename F>
auto stage(const char* name, int year, std::map<std::string, double>& timings, F&& body) {
    const auto start = Clock::now();
    try {
        if constexpr (std::is_void_v<decltype(body())>) {
            body();
            timings[name] += elapsed_ms(start);
        } else {
            auto value = body();
            timings[name] += elapsed_ms(start);
            return value;
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, year, e.what());
    }
}

YearOutcome analyze_year(const std::vector<PriceSeries>& eligible, int year, const AnalysisConfig& cfg) {
    YearOutcome outcome;
    auto skip = [&](const std::string& why) {
        outcome.warnings.push_back("year " + std::to_string(year) + " skipped: " + why);
        return outcome;
    };

    YearPanel panel;
    try {
        panel = stage("slice_year", year, outcome.timings_ms, [&] { return slice_year(eligible, year); });
    } catch (const StageError&) {
        return skip("no trading days");
    }
    outcome.panel_size = panel.series.size();

    if (panel.trading_days.size() < 2) {
        return skip("fewer than 2 trading days");
    }
    const std::size_t return_count = panel.trading_days.size() - 1;
    const auto min_returns = static_cast<std::size_t>(std::max(2, cfg.panel.state_count));
    if (return_count < min_returns) {
        return skip(std::to_string(return_count) + " returns, need at least " + std::to_string(min_returns));
    }

    std::vector<ReturnSeries> returns;
    std::vector<const PriceSeries*> members;
    stage("returns", year, outcome.timings_ms, [&] {
        for (const auto& s : panel.series) {
            auto r = log_returns(s);
            const bool constant = std::all_of(r.values.begin(), r.values.end(),
                                              [&](double v) { return v == r.values.front(); });
            if (constant) {
                outcome.warnings.push_back("year " + std::to_string(year) + ": '" + s.ticker +
                                           "' dropped, zero return variance");
                continue;
            }
            returns.push_back(std::move(r));
            members.push_back(&s);
        }
    });
    if (returns.size() < 3) {
        return skip(std::to_string(returns.size()) + " complete series with non-zero variance, need at least 3");
    }

    YearResult result;
    result.year = year;
    result.trading_days = panel.trading_days.size();
    result.correlation = stage("correlation", year, outcome.timings_ms, [&] { return pearson_matrix(returns); });
    result.distance = stage("distance", year, outcome.timings_ms,
                            [&] { return to_distance(result.correlation, cfg.metric); });
    result.tree = stage("mst", year, outcome.timings_ms, [&] {
        auto tree = build_mst(result.distance, result.correlation);
        validate_tree(tree);
        return tree;
    });
    const auto centrality = stage("centrality", year, outcome.timings_ms, [&] { return tree_centrality(result.tree); });

    stage("entropy", year, outcome.timings_ms, [&] {
        for (std::size_t i = 0; i < returns.size(); ++i) {
            const auto& r = returns[i];
            StockMetrics m;
            m.year = year;
            m.ticker = r.ticker;
            m.sector = members[i]->sector;
            m.mean_return = mean(r.values);
            m.sd_return = stddev(r.values);
            m.centrality = centrality.scores[i];
            m.n_returns = r.values.size();
            try {
                m.entropy_bits = entropy_rate_lz(discretize_quartiles(r, cfg.panel.state_count)).bits;
            } catch (const std::exception& e) {
                throw StageError("entropy", year, "'" + r.ticker + "': " + e.what());
            }
            result.metrics.push_back(std::move(m));
        }
    });
    outcome.result = std::move(result);
    return outcome;
}

} // namespace

AnalysisResult analyze(const std::vector<PriceSeries>& prices, const AnalysisConfig& cfg) {
    cfg.validate();
    AnalysisResult out;
    out.loaded_count = prices.size();

    const auto start = Clock::now();
    const auto eligible = filter_eligible(prices, cfg.panel);
    out.timings_ms["filter_eligible"] = elapsed_ms(start);
    out.eligible_count = eligible.size();
    if (eligible.empty()) {
        out.warnings.push_back("no series passes the " + std::to_string(cfg.panel.min_consecutive_days) +
                               "-day eligibility rule");
    }

    std::vector<int> years;
    for (int y = cfg.panel.years.first; y <= cfg.panel.years.last; ++y) {
        years.push_back(y);
    }
    std::vector<YearOutcome> outcomes(years.size());
    std::vector<std::exception_ptr> failures(years.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < years.size(); i = next++) {
            try {
                outcomes[i] = analyze_year(eligible, years[i], cfg);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), years.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }

    for (std::size_t i = 0; i < years.size(); ++i) {
        auto& o = outcomes[i];
        out.warnings.insert(out.warnings.end(), o.warnings.begin(), o.warnings.end());
        for (const auto& [name, ms] : o.timings_ms) {
            out.timings_ms[name] += ms;
        }
        if (o.panel_size) {
            out.panel_sizes[years[i]] = *o.panel_size;
        }
        if (o.result) {
            out.metrics.insert(out.metrics.end(), o.result->metrics.begin(), o.result->metrics.end());
            out.years.push_back(std::move(*o.result));
        }
    }

    const auto agg_start = Clock::now();
    for (const auto& y : out.years) {
        auto rows = sector_summaries(out.metrics, y.year);
        out.sectors.insert(out.sectors.end(), rows.begin(), rows.end());
        out.markets.push_back(market_summary(out.metrics, y.year));
    }
    out.correlations.k = cfg.top_k;
    try {
        out.correlations.all = metric_correlation(out.metrics, MetricSelector::all());
    } catch (const InvalidArgument& e) {
        out.warnings.push_back(std::string("entropy/SD correlation (all) undefined: ") + e.what());
    }
    try {
        out.correlations.top = metric_correlation(out.metrics, MetricSelector::top(cfg.top_k));
    } catch (const InvalidArgument& e) {
        out.warnings.push_back("entropy/SD correlation (top " + std::to_string(cfg.top_k) +
                               ") undefined: " + e.what());
    }
    out.timings_ms["analytics"] = elapsed_ms(agg_start);
    return out;
}

std::vector<std::string> write_outputs(const AnalysisResult& result, const AnalysisConfig& cfg,
                                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    auto open = [&](const std::string& name) {
        std::ofstream file(out_dir / name, std::ios::binary);
        if (!file) {
            throw StageError("write", 0, "cannot open '" + (out_dir / name).string() + "'");
        }
        written.push_back(name);
        return file;
    };

    for (const auto& y : result.years) {
        std::map<std::string, NodeAttributes> attributes;
        for (const auto& m : y.metrics) {
            attributes[m.ticker] = {m.sector, m.mean_return};
        }
        auto dot = open("tree_" + std::to_string(y.year) + ".dot");
        write_tree_dot(dot, y.tree, "mst_" + std::to_string(y.year), attributes);
        if (cfg.write_matrices) {
            auto corr = open("corr_" + std::to_string(y.year) + ".csv");
            write_matrix_csv(corr, y.correlation.tickers, y.correlation.entries);
            auto dist = open("dist_" + std::to_string(y.year) + ".csv");
            write_matrix_csv(dist, y.distance.tickers, y.distance.entries);
        }
    }
    {
        auto f = open("stock_metrics.csv");
        write_stock_metrics_csv(f, result.metrics);
    }
    {
        auto f = open("centrality.csv");
        write_centrality_csv(f, result.metrics);
    }
    {
        auto f = open("entropy.csv");
        write_entropy_csv(f, result.metrics);
    }
    {
        auto f = open("sector_summaries.csv");
        write_sector_summaries_csv(f, result.sectors);
    }
    {
        auto f = open("market_summaries.csv");
        write_market_summaries_csv(f, result.markets);
    }
    {
        auto f = open("correlations.json");
        write_correlations_json(f, result.correlations);
    }
    {
        auto f = open("panel_sizes.csv");
        f << "year,complete_series,analyzed_series\n";
        for (const auto& [year, size] : result.panel_sizes) {
            auto it = std::find_if(result.years.begin(), result.years.end(),
                                   [&](const YearResult& y) { return y.year == year; });
            f << year << ',' << size << ',' << (it == result.years.end() ? 0 : it->metrics.size()) << '\n';
        }
    }
    return written;
}

void write_manifest(std::ostream& out, const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["tool"] = "mstnet";
    j["tool_version"] = manifest.tool_version;
    j["config"] = manifest.config;
    j["inputs"] = manifest.input_digests;
    j["timings_ms"] = manifest.timings_ms;
    out << j.dump(2) << '\n';
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot read '" + path.string() + "'");
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 initialisation failed");
    }
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &length);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

} // namespace mstnet
