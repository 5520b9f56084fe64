/**
 * @file synth.cpp
 * @brief Reproducible synthetic discrete sources and block-correlated returns.
 */

#include "mstnet/synth.hpp"

#include "mstnet/error.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <queue>

namespace mstnet {

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
    if (bound == 0) {
        throw InvalidArgument("uniform_int bound must be positive");
    }
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = engine_();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

DiscreteSeries gen_iid(std::size_t n, int k, std::uint64_t seed) {
    if (n < 1 || k < 2) {
        throw InvalidArgument("gen_iid needs n >= 1 and k >= 2");
    }
    Rng rng(seed);
    DiscreteSeries out{"IID", k, std::vector<int>(n)};
    for (auto& s : out.symbols) {
        s = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
    }
    return out;
}

namespace {

void validate_transitions(const TransitionRows& p) {
    const std::size_t k = p.size();
    if (k < 2) {
        throw InvalidArgument("transition matrix needs at least 2 states");
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (p[i].size() != k) {
            throw InvalidArgument("transition row " + std::to_string(i) + " has " + std::to_string(p[i].size()) +
                                  " entries, expected " + std::to_string(k));
        }
        double sum = 0.0;
        for (double x : p[i]) {
            if (!(x >= 0.0) || !std::isfinite(x)) {
                throw InvalidArgument("transition row " + std::to_string(i) + " has a negative or non-finite entry");
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw InvalidArgument("transition row " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
    }
    // Irreducible iff every state is reachable from state 0 and can reach it.
    for (bool reverse : {false, true}) {
        std::vector<bool> seen(k, false);
        std::queue<std::size_t> frontier;
        frontier.push(0);
        seen[0] = true;
        while (!frontier.empty()) {
            const auto i = frontier.front();
            frontier.pop();
            for (std::size_t j = 0; j < k; ++j) {
                const double w = reverse ? p[j][i] : p[i][j];
                if (w > 0.0 && !seen[j]) {
                    seen[j] = true;
                    frontier.push(j);
                }
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (!seen[j]) {
                throw InvalidArgument("transition matrix is reducible (state " + std::to_string(j) +
                                      " is not mutually reachable with state 0)");
            }
        }
    }
}

Eigen::VectorXd stationary_of(const TransitionRows& p) {
    const auto k = static_cast<Eigen::Index>(p.size());
    Eigen::MatrixXd a(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            a(i, j) = p[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - (i == j ? 1.0 : 0.0);
        }
    }
    a.row(k - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    rhs(k - 1) = 1.0;
    return a.partialPivLu().solve(rhs);
}

int draw(Rng& rng, const std::vector<double>& probabilities) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (std::size_t j = 0; j < probabilities.size(); ++j) {
        cumulative += probabilities[j];
        if (u < cumulative) {
            return static_cast<int>(j);
        }
    }
    // Rounding left u above the last cumulative sum; take the last positive entry.
    for (std::size_t j = probabilities.size(); j-- > 0;) {
        if (probabilities[j] > 0.0) {
            return static_cast<int>(j);
        }
    }
    return 0;
}

} // namespace

double markov_entropy_rate(const TransitionRows& p) {
    validate_transitions(p);
    const auto pi = stationary_of(p);
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (double x : p[i]) {
            if (x > 0.0) {
                h -= pi(static_cast<Eigen::Index>(i)) * x * std::log2(x);
            }
        }
    }
    return h;
}

MarkovSample gen_markov(const TransitionRows& p, std::size_t n, std::uint64_t seed) {
    validate_transitions(p);
    if (n < 1) {
        throw InvalidArgument("gen_markov needs n >= 1");
    }
    const auto pi = stationary_of(p);
    std::vector<double> start(pi.data(), pi.data() + pi.size());

    Rng rng(seed);
    MarkovSample out{{"MARKOV", static_cast<int>(p.size()), std::vector<int>(n)}, markov_entropy_rate(p)};
    int state = draw(rng, start);
    out.series.symbols[0] = state;
    for (std::size_t t = 1; t < n; ++t) {
        state = draw(rng, p[static_cast<std::size_t>(state)]);
        out.series.symbols[t] = state;
    }
    return out;
}

std::vector<ReturnSeries> gen_correlated_returns(const std::vector<Block>& blocks, std::size_t n,
                                                 std::uint64_t seed, double volatility) {
    if (blocks.empty() || n < 1) {
        throw InvalidArgument("gen_correlated_returns needs at least one block and n >= 1");
    }
    if (!(volatility > 0.0)) {
        throw InvalidArgument("volatility must be positive");
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].size < 1) {
            throw InvalidArgument("block " + std::to_string(b) + " has size 0");
        }
        // Equicorrelation rho is PSD for any block size only on [0, 1); 1 is degenerate.
        if (!(blocks[b].intra_rho >= 0.0 && blocks[b].intra_rho < 1.0)) {
            throw InvalidArgument("block " + std::to_string(b) + " intra_rho must lie in [0, 1)");
        }
    }

    Rng rng(seed);
    std::vector<ReturnSeries> out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& block = blocks[b];
        const double load = std::sqrt(block.intra_rho);
        const double idio = std::sqrt(1.0 - block.intra_rho);
        const std::size_t first = out.size();
        for (std::size_t m = 0; m < block.size; ++m) {
            out.push_back({"B" + std::to_string(b) + "S" + std::to_string(m), std::vector<double>(n)});
        }
        for (std::size_t t = 0; t < n; ++t) {
            const double factor = rng.normal();
            for (std::size_t m = 0; m < block.size; ++m) {
                out[first + m].values[t] = volatility * (load * factor + idio * rng.normal());
            }
        }
    }
    return out;
}

PriceSeries prices_from_returns(const ReturnSeries& returns, const std::string& sector, const Date& start,
                                double start_price) {
    using std::chrono::sys_days;
    using std::chrono::weekday;
    auto next_weekday = [](sys_days d) {
        while (weekday{d} == std::chrono::Saturday || weekday{d} == std::chrono::Sunday) {
            d += std::chrono::days{1};
        }
        return d;
    };
    PriceSeries out{returns.ticker, sector, {}};
    out.observations.reserve(returns.values.size() + 1);
    sys_days day = next_weekday(sys_days{start});
    double price = start_price;
    out.observations.push_back({Date{day}, price});
    for (double r : returns.values) {
        day = next_weekday(day + std::chrono::days{1});
        price *= std::exp(r);
        out.observations.push_back({Date{day}, price});
    }
    return out;
}

} // namespace mstnet

// ---------------------------------------------------------------------------
// JSON spec
// ---------------------------------------------------------------------------

namespace mstnet {

namespace {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* name, T fallback, bool required = false) {
    if (!j.contains(name)) {
        if (required) {
            throw InvalidArgument(std::string("field '") + name + "': missing");
        }
        return fallback;
    }
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument(std::string("field '") + name + "': wrong type");
    }
}

} // namespace

SynthSpec read_synth_spec(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw InvalidArgument("spec must be a JSON object");
    }

    SynthSpec spec;
    const auto kind = field<std::string>(j, "kind", "", true);
    if (kind == "iid_uniform") {
        spec.kind = SynthSpec::Kind::iid_uniform;
    } else if (kind == "markov_chain") {
        spec.kind = SynthSpec::Kind::markov_chain;
    } else if (kind == "block_correlated_gaussian") {
        spec.kind = SynthSpec::Kind::block_correlated_gaussian;
    } else {
        throw InvalidArgument("field 'kind': unknown kind '" + kind + "'");
    }

    const auto n = field<long long>(j, "n", 1000);
    if (n < 1) {
        throw InvalidArgument("field 'n': must be >= 1");
    }
    spec.n = static_cast<std::size_t>(n);
    spec.seed = field<std::uint64_t>(j, "seed", 0);
    spec.k = field<int>(j, "k", 4);
    if (spec.k < 2) {
        throw InvalidArgument("field 'k': must be >= 2");
    }
    const auto series = field<long long>(j, "series", 1);
    if (series < 1) {
        throw InvalidArgument("field 'series': must be >= 1");
    }
    spec.series = static_cast<std::size_t>(series);
    spec.volatility = field<double>(j, "volatility", 0.01);
    if (!(spec.volatility > 0.0)) {
        throw InvalidArgument("field 'volatility': must be positive");
    }
    if (j.contains("start_date")) {
        auto date = parse_iso_date(field<std::string>(j, "start_date", ""));
        if (!date) {
            throw InvalidArgument("field 'start_date': expected YYYY-MM-DD");
        }
        spec.start = *date;
    }

    if (spec.kind == SynthSpec::Kind::markov_chain) {
        spec.transition = field<TransitionRows>(j, "transition", {}, true);
        try {
            validate_transitions(spec.transition);
        } catch (const InvalidArgument& e) {
            throw InvalidArgument(std::string("field 'transition': ") + e.what());
        }
    }
    if (spec.kind == SynthSpec::Kind::block_correlated_gaussian) {
        if (!j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty()) {
            throw InvalidArgument("field 'blocks': expected a non-empty array");
        }
        for (std::size_t b = 0; b < j["blocks"].size(); ++b) {
            const auto& jb = j["blocks"][b];
            const std::string where = "field 'blocks[" + std::to_string(b) + "]";
            if (!jb.is_object()) {
                throw InvalidArgument(where + "': expected an object");
            }
            Block block;
            try {
                const auto size = field<long long>(jb, "size", 0, true);
                if (size < 1) {
                    throw InvalidArgument("size must be >= 1");
                }
                block.size = static_cast<std::size_t>(size);
                block.intra_rho = field<double>(jb, "rho", 0.0, true);
                if (!(block.intra_rho >= 0.0 && block.intra_rho < 1.0)) {
                    throw InvalidArgument("rho must lie in [0, 1)");
                }
                block.sector = field<std::string>(jb, "sector", "");
            } catch (const InvalidArgument& e) {
                throw InvalidArgument(where + "': " + e.what());
            }
            spec.blocks.push_back(block);
        }
    }
    return spec;
}

SynthPanel generate_panel(const SynthSpec& spec) {
    SynthPanel panel;
    auto add = [&](ReturnSeries r, const std::string& sector) {
        panel.sectors[r.ticker] = sector;
        panel.prices.push_back(prices_from_returns(r, sector, spec.start));
    };

    if (spec.kind == SynthSpec::Kind::block_correlated_gaussian) {
        const auto returns = gen_correlated_returns(spec.blocks, spec.n, spec.seed, spec.volatility);
        std::size_t index = 0;
        for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
            const auto& sector = spec.blocks[b].sector.empty() ? "block" + std::to_string(b) : spec.blocks[b].sector;
            for (std::size_t m = 0; m < spec.blocks[b].size; ++m) {
                add(returns[index++], sector);
            }
        }
        return panel;
    }

    const bool markov = spec.kind == SynthSpec::Kind::markov_chain;
    const int k = markov ? static_cast<int>(spec.transition.size()) : spec.k;
    const std::string prefix = markov ? "MC" : "IID";
    for (std::size_t i = 0; i < spec.series; ++i) {
        const auto seed = spec.seed + i;
        const auto symbols = markov ? gen_markov(spec.transition, spec.n, seed).series : gen_iid(spec.n, k, seed);
        ReturnSeries r{prefix + std::to_string(i), {}};
        r.values.reserve(symbols.symbols.size());
        for (int s : symbols.symbols) {
            r.values.push_back(spec.volatility * (s - 0.5 * (k - 1)));
        }
        add(std::move(r), markov ? "markov" : "iid");
    }
    return panel;
}

} // namespace mstnet
