/**
 * @file mstnet_cli.cpp
 * @brief Command-line front end: analyze, synth, entropy, mst.
 */

#include "mstnet/centrality.hpp"
#include "mstnet/config.hpp"
#include "mstnet/entropy.hpp"
#include "mstnet/error.hpp"
#include "mstnet/pipeline.hpp"
#include "mstnet/report.hpp"
#include "mstnet/synth.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace mstnet;

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    return in;
}

struct AnalyzeOptions {
    std::string config_path;
    std::string prices_path;
    std::string sectors_path;
    std::string out_dir;
    std::string years;
    int states = 0;
    int min_days = 0;
    long top_k = 0;
    bool alt_distance = false;
    int jobs = 0;
    bool matrices = false;
};

int run_analyze(const AnalyzeOptions& opt) {
    AnalysisConfig cfg;
    std::string config_path = opt.config_path;
    if (config_path.empty()) {
        if (const char* env = std::getenv(kConfigEnvVar)) {
            config_path = env;
        }
    }
    if (!config_path.empty()) {
        auto in = open_input(config_path);
        read_config(in, cfg);
    }
    if (!opt.years.empty()) cfg.panel.years = parse_year_range(opt.years);
    if (opt.states) cfg.panel.state_count = opt.states;
    if (opt.min_days) cfg.panel.min_consecutive_days = opt.min_days;
    if (opt.top_k) cfg.top_k = static_cast<std::size_t>(opt.top_k);
    if (opt.alt_distance) cfg.metric = DistanceMetric::euclidean_correlation;
    if (opt.jobs) cfg.jobs = opt.jobs;
    if (opt.matrices) cfg.write_matrices = true;
    if (!opt.sectors_path.empty()) cfg.panel.sector_map_path = opt.sectors_path;
    cfg.validate();

    const auto start = std::chrono::steady_clock::now();
    std::vector<PriceSeries> prices;
    try {
        auto in = open_input(opt.prices_path);
        prices = load_prices(in);
    } catch (const std::exception& e) {
        throw StageError("load_prices", 0, e.what());
    }

    RunManifest manifest;
    manifest.input_digests[opt.prices_path] = sha256_file(opt.prices_path);
    SectorMap sectors;
    const auto& sector_path = cfg.panel.sector_map_path;
    if (sector_path.empty()) {
        std::cerr << "warning: no sector map given; all tickers are " << kUnclassifiedSector << "\n";
    } else if (!fs::exists(sector_path)) {
        std::cerr << "warning: sector map '" << sector_path << "' not found; all tickers are "
                  << kUnclassifiedSector << "\n";
    } else {
        try {
            auto in = open_input(sector_path);
            sectors = load_sector_map(in);
        } catch (const std::exception& e) {
            throw StageError("load_sector_map", 0, e.what());
        }
        manifest.input_digests[sector_path] = sha256_file(sector_path);
    }
    assign_sectors(prices, sectors);
    const double load_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    auto result = analyze(prices, cfg);
    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    const auto files = write_outputs(result, cfg, opt.out_dir);

    manifest.config = cfg.snapshot();
    manifest.timings_ms = result.timings_ms;
    manifest.timings_ms["load"] = load_ms;
    std::ofstream mf(fs::path(opt.out_dir) / "manifest.json", std::ios::binary);
    write_manifest(mf, manifest);

    std::cout << "analyzed " << result.years.size() << " year(s), " << result.metrics.size()
              << " stock-year points from " << result.eligible_count << " eligible of " << result.loaded_count
              << " series; wrote " << files.size() + 1 << " files to " << opt.out_dir << "\n";
    return 0;
}

int run_synth(const std::string& spec_path, const std::string& out_path, const std::string& sectors_out) {
    auto in = open_input(spec_path);
    const auto spec = read_synth_spec(in);
    const auto panel = generate_panel(spec);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw InvalidArgument("cannot write '" + out_path + "'");
    }
    write_prices_csv(out, panel.prices);
    if (!sectors_out.empty()) {
        std::ofstream sf(sectors_out, std::ios::binary);
        if (!sf) {
            throw InvalidArgument("cannot write '" + sectors_out + "'");
        }
        write_sectors_csv(sf, panel.sectors);
    }
    return 0;
}

int run_entropy(const std::string& prices_path, const std::string& symbols_path, const std::string& ticker,
                int states) {
    std::cout << "ticker,n,entropy_rate_bits\n";
    if (!symbols_path.empty()) {
        auto in = open_input(symbols_path);
        std::vector<int> symbols;
        for (int s; in >> s;) {
            symbols.push_back(s);
        }
        if (!in.eof()) {
            throw InvalidArgument("'" + symbols_path + "' contains a non-integer token");
        }
        const auto est = entropy_rate_lz(symbols);
        std::cout << (ticker.empty() ? "symbols" : ticker) << ',' << est.n << ',' << format_real(est.bits) << "\n";
        return 0;
    }
    auto in = open_input(prices_path);
    bool found = false;
    for (const auto& series : load_prices(in)) {
        if (!ticker.empty() && series.ticker != ticker) {
            continue;
        }
        found = true;
        const auto est = entropy_rate_lz(discretize_quartiles(log_returns(series), states));
        std::cout << series.ticker << ',' << est.n << ',' << format_real(est.bits) << "\n";
    }
    if (!found) {
        throw InvalidArgument(ticker.empty() ? "no series in input" : "ticker '" + ticker + "' not found");
    }
    return 0;
}

int run_mst(const std::string& matrix_path, const std::string& kind, bool alt_distance, const std::string& out_path) {
    auto in = open_input(matrix_path);
    SpanningTree tree;
    if (kind == "correlation") {
        const auto corr = read_correlation_csv(in);
        const auto dist =
            to_distance(corr, alt_distance ? DistanceMetric::euclidean_correlation : DistanceMetric::squared_correlation);
        tree = build_mst(dist, corr);
    } else {
        tree = build_mst(read_distance_csv(in));
    }
    if (out_path.empty() || out_path == "-") {
        write_tree_dot(std::cout, tree, "mst");
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw InvalidArgument("cannot write '" + out_path + "'");
        }
        write_tree_dot(out, tree, "mst");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mstnet: correlation MST, Markov centrality and LZ entropy analysis of price panels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    AnalyzeOptions analyze_opt;
    auto* analyze = app.add_subcommand("analyze", "run the yearly pipeline over a prices CSV");
    analyze->add_option("--config", analyze_opt.config_path,
                        std::string("key=value config file (default: $") + kConfigEnvVar + ")");
    analyze->add_option("--prices", analyze_opt.prices_path, "prices CSV (ticker,date,close)")->required();
    analyze->add_option("--sectors", analyze_opt.sectors_path, "sector CSV (ticker,sector)");
    analyze->add_option("--out", analyze_opt.out_dir, "output directory")->required();
    analyze->add_option("--years", analyze_opt.years, "inclusive year range A:B");
    analyze->add_option("--states", analyze_opt.states, "discretisation states (default 4)")->check(CLI::Range(2, 1 << 16));
    analyze->add_option("--min-days", analyze_opt.min_days, "minimum consecutive trading days (default 1000)")
        ->check(CLI::Range(2, 1 << 30));
    analyze->add_option("--top-k", analyze_opt.top_k, "top-k centrality subset (default 100)")->check(CLI::PositiveNumber);
    analyze->add_flag("--alt-distance", analyze_opt.alt_distance, "use sqrt(2(1-rho)) instead of 1-rho^2");
    analyze->add_option("--jobs", analyze_opt.jobs, "years processed in parallel")->check(CLI::Range(1, 1024));
    analyze->add_flag("--matrices", analyze_opt.matrices, "also write correlation and distance matrices");

    std::string spec_path, synth_out, sectors_out;
    auto* synth = app.add_subcommand("synth", "generate a synthetic prices CSV from a JSON spec");
    synth->add_option("--spec", spec_path, "JSON spec")->required();
    synth->add_option("--out", synth_out, "prices CSV to write")->required();
    synth->add_option("--sectors-out", sectors_out, "sector CSV to write");

    std::string entropy_prices, entropy_symbols, entropy_ticker;
    int entropy_states = 4;
    auto* entropy = app.add_subcommand("entropy", "LZ entropy rate of one or more series");
    auto* ep = entropy->add_option("--prices", entropy_prices, "prices CSV");
    auto* es = entropy->add_option("--symbols", entropy_symbols, "whitespace-separated integer symbols");
    ep->excludes(es);
    entropy->add_option("--ticker", entropy_ticker, "restrict to one ticker");
    entropy->add_option("--states", entropy_states, "discretisation states")->check(CLI::Range(2, 1 << 16));

    std::string matrix_path, matrix_kind = "correlation", mst_out;
    bool mst_alt = false;
    auto* mst = app.add_subcommand("mst", "minimal spanning tree of a matrix CSV, as DOT");
    mst->add_option("--matrix", matrix_path, "matrix CSV with ticker header row and column")->required();
    mst->add_option("--kind", matrix_kind, "correlation or distance")
        ->check(CLI::IsMember({"correlation", "distance"}));
    mst->add_flag("--alt-distance", mst_alt, "use sqrt(2(1-rho)) for correlation input");
    mst->add_option("--out", mst_out, "DOT file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*analyze) {
            return run_analyze(analyze_opt);
        }
        if (*synth) {
            return run_synth(spec_path, synth_out, sectors_out);
        }
        if (*entropy) {
            if (entropy_prices.empty() && entropy_symbols.empty()) {
                throw InvalidArgument("entropy needs --prices or --symbols");
            }
            return run_entropy(entropy_prices, entropy_symbols, entropy_ticker, entropy_states);
        }
        if (*mst) {
            return run_mst(matrix_path, matrix_kind, mst_alt, mst_out);
        }
    } catch (const StageError& e) {
        std::cerr << "error: stage " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
