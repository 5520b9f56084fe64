/**
 * @file synth.hpp
 * @brief Synthetic sources with known entropy rates and correlation structure.
 *
 * Randomness comes from std::mt19937_64, whose output sequence is fixed by
 * the standard, with the library's own integer, real and normal transforms
 * so that a given seed produces the same bytes on every platform.
 */

#pragma once

#include "mstnet/ingest.hpp"
#include "mstnet/returns.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mstnet {

inline constexpr const char* kRngName = "mt19937_64/polar-v1";

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, bound) by rejection sampling.
    std::uint64_t uniform_int(std::uint64_t bound);
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();
    /// Standard normal, Marsaglia polar method.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

using TransitionRows = std::vector<std::vector<double>>;

struct MarkovSample {
    DiscreteSeries series;
    double true_entropy = 0.0;  // bits per symbol
};

struct Block {
    std::size_t size = 1;
    double intra_rho = 0.0;
    std::string sector;  // defaults to "block<i>" when empty
};

DiscreteSeries gen_iid(std::size_t n, int k, std::uint64_t seed);

/// Throws InvalidArgument for non-stochastic or reducible transition matrices.
MarkovSample gen_markov(const TransitionRows& p, std::size_t n, std::uint64_t seed);

/// -sum_i pi_i sum_j P_ij log2 P_ij
double markov_entropy_rate(const TransitionRows& p);

/**
 * Equicorrelated Gaussian factor model, x = sqrt(rho) f_block + sqrt(1 - rho) e.
 * Series are named B<block>S<member> and scaled by `volatility`.
 */
std::vector<ReturnSeries> gen_correlated_returns(const std::vector<Block>& blocks, std::size_t n,
                                                 std::uint64_t seed, double volatility = 0.01);

/// Prices from compounding returns from `start_price`, dated on weekdays from `start`.
PriceSeries prices_from_returns(const ReturnSeries& returns, const std::string& sector,
                                const Date& start, double start_price = 100.0);

/// Declarative description of a synthetic panel, read from JSON by the `synth` subcommand.
struct SynthSpec {
    enum class Kind { iid_uniform, markov_chain, block_correlated_gaussian };

    Kind kind = Kind::iid_uniform;
    std::size_t n = 1000;       // returns per series
    std::uint64_t seed = 0;
    int k = 4;                  // iid alphabet size
    std::size_t series = 1;     // iid / markov: number of instruments
    TransitionRows transition;  // markov
    std::vector<Block> blocks;  // block_correlated_gaussian
    Date start{std::chrono::year{2000}, std::chrono::January, std::chrono::day{3}};
    double volatility = 0.01;
};

/**
 * Reads a JSON spec such as
 * `{"kind": "markov_chain", "n": 5000, "seed": 7, "series": 3, "transition": [[0.9, 0.1], [0.1, 0.9]]}`.
 * Throws InvalidArgument naming the offending field.
 */
SynthSpec read_synth_spec(std::istream& in);

struct SynthPanel {
    std::vector<PriceSeries> prices;
    SectorMap sectors;
};

/**
 * Materialises the spec as prices. Discrete kinds map symbol s to a daily log
 * return of volatility * (s - (k - 1) / 2); instrument i uses seed + i.
 */
SynthPanel generate_panel(const SynthSpec& spec);

} // namespace mstnet
