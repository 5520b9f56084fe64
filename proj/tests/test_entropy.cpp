#include "mstnet/entropy.hpp"
#include "mstnet/error.hpp"
#include "mstnet/synth.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mstnet;

TEST_CASE("lambda_lengths small cases") {
    // a b a b: position 3 fully matches its suffix "ab" (2 + 1), position 4 matches "b" (1 + 1).
    CHECK(lambda_lengths(std::vector<int>{0, 1, 0, 1}) == std::vector<std::int64_t>{1, 1, 3, 2});
    CHECK(oracle::brute_force_lambdas({0, 1, 0, 1}) == std::vector<std::int64_t>{1, 1, 3, 2});

    CHECK(lambda_lengths(std::vector<int>{5}) == std::vector<std::int64_t>{1});
    CHECK(lambda_lengths(std::vector<int>{0, 0, 0, 0, 0}) == std::vector<std::int64_t>{1, 2, 3, 3, 2});
    CHECK_THROWS_AS(lambda_lengths(std::vector<int>{}), InvalidArgument);
}

TEST_CASE("lambda_lengths matches the brute-force oracle") {
    std::mt19937_64 rng(31);
    for (int alphabet : {2, 4, 8}) {
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n = 1 + rng() % 300;
            std::vector<int> s(n);
            for (auto& x : s) {
                x = static_cast<int>(rng() % static_cast<std::uint64_t>(alphabet));
            }
            const auto fast = lambda_lengths(s);
            CHECK(fast == oracle::brute_force_lambdas(s));
            CHECK(fast[0] == 1);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(fast[i] >= 1);
                CHECK(fast[i] <= static_cast<std::int64_t>(n - i + 1));
            }
        }
    }
}

TEST_CASE("lambda_lengths on low-entropy periodic input") {
    std::vector<int> s;
    for (int i = 0; i < 200; ++i) {
        s.push_back(i % 3 == 0 ? 2 : 7);
    }
    CHECK(lambda_lengths(s) == oracle::brute_force_lambdas(s));
}

TEST_CASE("entropy_rate_lz") {
    CHECK_THROWS_AS(entropy_rate_lz(std::vector<int>{1}), InvalidArgument);
    // n = 4, log2 4 = 2, sum lambda = 7.
    const auto abab = entropy_rate_lz(std::vector<int>{0, 1, 0, 1});
    CHECK(abab.n == 4);
    CHECK(abab.bits == doctest::Approx(8.0 / 7.0));

    const auto constant = entropy_rate_lz(std::vector<int>(10000, 3));
    CHECK(constant.bits < 0.1);

    // Constant estimate shrinks as n grows.
    CHECK(entropy_rate_lz(std::vector<int>(4000, 0)).bits < entropy_rate_lz(std::vector<int>(400, 0)).bits);
}

TEST_CASE("entropy estimate is invariant under alphabet relabelling") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = gen_iid(500, 4, rng()).symbols;
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> relabelled(s.size());
        std::transform(s.begin(), s.end(), relabelled.begin(), [&](int x) { return 10 * perm[static_cast<std::size_t>(x)] - 3; });
        CHECK(entropy_rate_lz(s).bits == entropy_rate_lz(relabelled).bits);
    }
}

TEST_CASE("entropy estimate is invariant under increasing transforms of returns") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> g(0.0, 0.02);
    ReturnSeries r{"R", std::vector<double>(500)};
    for (auto& v : r.values) {
        v = g(rng);
    }
    ReturnSeries t = r;
    for (auto& v : t.values) {
        v = std::atan(50.0 * v) + 1.0;
    }
    CHECK(entropy_rate_lz(discretize_quartiles(r)).bits == entropy_rate_lz(discretize_quartiles(t)).bits);
}

TEST_CASE("entropy estimates near known rates") {
    const auto iid = entropy_rate_lz(gen_iid(1 << 14, 4, 5));
    CHECK(iid.bits == doctest::Approx(2.0).epsilon(0.1));
    CHECK(iid.bits <= 2.0 + 0.1);

    const TransitionRows sticky{{0.9, 0.1}, {0.1, 0.9}};
    const auto chain = gen_markov(sticky, 1 << 14, 9);
    CHECK(std::abs(entropy_rate_lz(chain.series).bits - chain.true_entropy) < 0.2);
}
