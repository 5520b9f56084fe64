// Independent reference implementations used only by the test suites.
// Nothing here calls into the code paths it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Edge = std::pair<int, int>;

/// Neumaier-compensated mean.
inline double compensated_mean(const std::vector<double>& xs) {
    double sum = 0.0, c = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return (sum + c) / static_cast<double>(xs.size());
}

/// Decodes a Pruefer sequence (length n-2, entries in [0, n)) into n-1 edges.
inline std::vector<Edge> pruefer_decode(const std::vector<int>& seq, int n) {
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int s : seq) {
        ++degree[static_cast<std::size_t>(s)];
    }
    std::vector<Edge> edges;
    for (int s : seq) {
        for (int leaf = 0; leaf < n; ++leaf) {
            if (degree[static_cast<std::size_t>(leaf)] == 1) {
                edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
                --degree[static_cast<std::size_t>(leaf)];
                --degree[static_cast<std::size_t>(s)];
                break;
            }
        }
    }
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i) {
        if (degree[static_cast<std::size_t>(i)] == 1) {
            (u < 0 ? u : v) = i;
        }
    }
    edges.emplace_back(u, v);
    return edges;
}

/// Sum in ascending order, so equal edge sets give bit-identical totals.
inline double canonical_sum(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    double total = 0.0;
    for (double x : xs) {
        total += x;
    }
    return total;
}

/// Minimum total weight over all n^(n-2) labelled spanning trees, summed canonically.
inline double brute_force_mst_weight(const Matrix& w) {
    const int n = static_cast<int>(w.size());
    if (n == 2) {
        return w[0][1];
    }
    std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<double> weights;
        for (auto [a, b] : pruefer_decode(seq, n)) {
            weights.push_back(w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
        }
        best = std::min(best, canonical_sum(std::move(weights)));
        std::size_t pos = 0;
        while (pos < seq.size() && ++seq[pos] == n) {
            seq[pos++] = 0;
        }
        if (pos == seq.size()) {
            break;
        }
    }
    return best;
}

inline std::vector<Edge> random_tree(int n, std::mt19937_64& rng) {
    if (n == 2) {
        return {{0, 1}};
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> seq(static_cast<std::size_t>(n - 2));
    for (auto& s : seq) {
        s = pick(rng);
    }
    return pruefer_decode(seq, n);
}

/// Solves A x = b by Gaussian elimination with partial pivoting in long double.
inline std::vector<long double> solve(std::vector<std::vector<long double>> a, std::vector<long double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::fabs(a[r][c]) > std::fabs(a[p][c])) {
                p = r;
            }
        }
        std::swap(a[c], a[p]);
        std::swap(b[c], b[p]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const long double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    std::vector<long double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        long double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            s -= a[i][k] * x[k];
        }
        x[i] = s / a[i][i];
    }
    return x;
}

inline std::vector<std::vector<int>> adjacency(const std::vector<Edge>& edges, int n) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
}

/**
 * Mean first-passage times of the uniform walk from first-step equations:
 * for target v, h(v) = 0 and h(s) = 1 + sum_u P(s,u) h(u); the return time
 * m(v,v) = 1 + sum_u P(v,u) h(u).
 */
inline Matrix first_passage_direct(const std::vector<Edge>& edges, int n) {
    const auto adj = adjacency(edges, n);
    Matrix m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int v = 0; v < n; ++v) {
        std::vector<int> index;  // non-target nodes
        for (int s = 0; s < n; ++s) {
            if (s != v) {
                index.push_back(s);
            }
        }
        const std::size_t k = index.size();
        std::vector<std::vector<long double>> a(k, std::vector<long double>(k, 0.0L));
        std::vector<long double> rhs(k, 1.0L);
        std::vector<int> pos(static_cast<std::size_t>(n), -1);
        for (std::size_t r = 0; r < k; ++r) {
            pos[static_cast<std::size_t>(index[r])] = static_cast<int>(r);
        }
        for (std::size_t r = 0; r < k; ++r) {
            const auto& nb = adj[static_cast<std::size_t>(index[r])];
            a[r][r] = 1.0L;
            for (int u : nb) {
                if (u != v) {
                    a[r][static_cast<std::size_t>(pos[static_cast<std::size_t>(u)])] -= 1.0L / nb.size();
                }
            }
        }
        const auto h = solve(a, rhs);
        long double ret = 1.0L;
        const auto& nv = adj[static_cast<std::size_t>(v)];
        for (int u : nv) {
            ret += h[static_cast<std::size_t>(pos[static_cast<std::size_t>(u)])] / nv.size();
        }
        m[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = static_cast<double>(ret);
        for (std::size_t r = 0; r < k; ++r) {
            m[static_cast<std::size_t>(index[r])][static_cast<std::size_t>(v)] = static_cast<double>(h[r]);
        }
    }
    return m;
}

/// Monte Carlo estimate of the expected steps from `source` to first reach `target` (> 0 steps).
inline double monte_carlo_passage(const std::vector<Edge>& edges, int n, int source, int target, int walks,
                                  std::uint64_t seed) {
    const auto adj = adjacency(edges, n);
    std::mt19937_64 rng(seed);
    long double total = 0.0L;
    for (int w = 0; w < walks; ++w) {
        int at = source;
        long steps = 0;
        do {
            const auto& nb = adj[static_cast<std::size_t>(at)];
            at = nb[static_cast<std::size_t>(rng() % nb.size())];
            ++steps;
        } while (at != target);
        total += steps;
    }
    return static_cast<double>(total / walks);
}

/// Exhaustive match lengths: 1 + longest prefix of s[i..] found wholly inside s[0..i-1].
inline std::vector<std::int64_t> brute_force_lambdas(const std::vector<int>& s) {
    const std::size_t n = s.size();
    std::vector<std::int64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t len = 1; i + len <= n && len <= i; ++len) {
            bool found = false;
            for (std::size_t start = 0; start + len <= i && !found; ++start) {
                found = std::equal(s.begin() + static_cast<std::ptrdiff_t>(start),
                                   s.begin() + static_cast<std::ptrdiff_t>(start + len),
                                   s.begin() + static_cast<std::ptrdiff_t>(i));
            }
            if (!found) {
                break;
            }
            best = len;
        }
        out[i] = static_cast<std::int64_t>(best) + 1;
    }
    return out;
}

/// Exact rational with 64-bit parts, enough for small hand-sized matrices.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction(std::int64_t n = 0, std::int64_t d = 1) : num(n), den(d) { normalise(); }

    void normalise() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const auto g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    friend Fraction operator+(Fraction a, Fraction b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Fraction operator-(Fraction a, Fraction b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Fraction operator*(Fraction a, Fraction b) { return {a.num * b.num, a.den * b.den}; }
    friend Fraction operator/(Fraction a, Fraction b) { return {a.num * b.den, a.den * b.num}; }
    friend bool operator==(Fraction a, Fraction b) { return a.num == b.num && a.den == b.den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

using FractionMatrix = std::vector<std::vector<Fraction>>;

/// Exact Gauss-Jordan inverse.
inline FractionMatrix exact_inverse(FractionMatrix a) {
    const std::size_t n = a.size();
    FractionMatrix inv(n, std::vector<Fraction>(n));
    for (std::size_t i = 0; i < n; ++i) {
        inv[i][i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a[p][c].num == 0) {
            ++p;
        }
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        const Fraction pivot = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] = a[c][k] / pivot;
            inv[c][k] = inv[c][k] / pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].num == 0) {
                continue;
            }
            const Fraction f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] = a[r][k] - f * a[c][k];
                inv[r][k] = inv[r][k] - f * inv[c][k];
            }
        }
    }
    return inv;
}

} // namespace oracle
