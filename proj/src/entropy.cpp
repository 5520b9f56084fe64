/**
 * @file entropy.cpp
 * @brief Match lengths over a growing history and the LZ entropy-rate estimate.
 */

#include "mstnet/entropy.hpp"

#include "mstnet/error.hpp"

#include <cmath>
#include <unordered_map>

namespace mstnet {

namespace {

/// Suffix automaton over a dense alphabet [0, alphabet), extended one symbol at a time.
class SuffixAutomaton {
public:
    SuffixAutomaton(std::size_t alphabet, std::size_t expected_length) : alphabet_(alphabet) {
        const std::size_t max_states = 2 * expected_length + 1;
        len_.reserve(max_states);
        link_.reserve(max_states);
        next_.reserve(max_states * alphabet_);
        add_state(0, -1);
    }

    /// Target of the transition on `symbol`, or -1.
    int step(int state, int symbol) const {
        return next_[static_cast<std::size_t>(state) * alphabet_ + static_cast<std::size_t>(symbol)];
    }

    void extend(int symbol) {
        const int cur = add_state(len_[static_cast<std::size_t>(last_)] + 1, -1);
        int p = last_;
        while (p != -1 && step(p, symbol) == -1) {
            set(p, symbol, cur);
            p = link_[static_cast<std::size_t>(p)];
        }
        if (p == -1) {
            link_[static_cast<std::size_t>(cur)] = 0;
        } else {
            const int q = step(p, symbol);
            if (len_[static_cast<std::size_t>(p)] + 1 == len_[static_cast<std::size_t>(q)]) {
                link_[static_cast<std::size_t>(cur)] = q;
            } else {
                const int clone = add_state(len_[static_cast<std::size_t>(p)] + 1, link_[static_cast<std::size_t>(q)]);
                for (std::size_t a = 0; a < alphabet_; ++a) {
                    next_[static_cast<std::size_t>(clone) * alphabet_ + a] =
                        next_[static_cast<std::size_t>(q) * alphabet_ + a];
                }
                while (p != -1 && step(p, symbol) == q) {
                    set(p, symbol, clone);
                    p = link_[static_cast<std::size_t>(p)];
                }
                link_[static_cast<std::size_t>(q)] = clone;
                link_[static_cast<std::size_t>(cur)] = clone;
            }
        }
        last_ = cur;
    }

private:
    int add_state(int len, int link) {
        len_.push_back(len);
        link_.push_back(link);
        next_.resize(next_.size() + alphabet_, -1);
        return static_cast<int>(len_.size() - 1);
    }

    void set(int state, int symbol, int target) {
        next_[static_cast<std::size_t>(state) * alphabet_ + static_cast<std::size_t>(symbol)] = target;
    }

    std::size_t alphabet_;
    std::vector<int> len_;
    std::vector<int> link_;
    std::vector<int> next_;
    int last_ = 0;
};

/// Relabels symbols to 0.. in order of first appearance.
std::vector<int> dense_symbols(std::span<const int> symbols, std::size_t& alphabet) {
    std::unordered_map<int, int> ids;
    std::vector<int> out;
    out.reserve(symbols.size());
    for (int s : symbols) {
        auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    alphabet = ids.size();
    return out;
}

} // namespace

std::vector<std::int64_t> lambda_lengths(std::span<const int> symbols) {
    if (symbols.empty()) {
        throw InvalidArgument("lambda_lengths of an empty sequence");
    }
    std::size_t alphabet = 0;
    const auto s = dense_symbols(symbols, alphabet);
    const std::size_t n = s.size();

    SuffixAutomaton history(alphabet, n);
    std::vector<std::int64_t> lambdas(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t matched = 0;
        int state = 0;
        while (i + matched < n) {
            const int next = history.step(state, s[i + matched]);
            if (next == -1) {
                break;
            }
            state = next;
            ++matched;
        }
        lambdas[i] = static_cast<std::int64_t>(matched) + 1;
        history.extend(s[i]);
    }
    return lambdas;
}

EntropyEstimate entropy_rate_lz(std::span<const int> symbols) {
    if (symbols.size() < 2) {
        throw InvalidArgument("entropy_rate_lz needs at least 2 symbols");
    }
    const auto lambdas = lambda_lengths(symbols);
    long double total = 0.0L;
    for (auto l : lambdas) {
        total += static_cast<long double>(l);
    }
    const auto n = static_cast<double>(symbols.size());
    return {static_cast<double>(n * std::log2(n) / total), symbols.size()};
}

} // namespace mstnet
