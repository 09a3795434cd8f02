#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "evim/errors.hpp"
#include "evim/seed_selection.hpp"
#include "support.hpp"

using namespace evim;
using Edges = std::vector<std::tuple<NodeId, NodeId, double>>;

namespace {

// Closed-form gain written directly from the dense matrix.
double oracle_gain(const testing::Dense &d, const std::vector<NodeId> &s, NodeId x, int level) {
    std::vector<char> in(d.n, 0);
    for (NodeId u : s) {
        in[u] = 1;
    }
    double g = 1.0;
    for (NodeId v = 0; v < d.n; ++v) {
        if (!in[v] && v != x) {
            g += d.credit(x, v, level);
        }
    }
    return g;
}

// Plain greedy on the oracle gain.
std::vector<NodeId> oracle_greedy(const testing::Dense &d, std::size_t k, int level) {
    std::vector<NodeId> s;
    std::vector<char> in(d.n, 0);
    while (s.size() < k) {
        NodeId best = 0;
        double best_gain = -1.0;
        for (NodeId x = 0; x < d.n; ++x) {
            if (!in[x]) {
                const double g = oracle_gain(d, s, x, level);
                if (g > best_gain) {
                    best = x, best_gain = g;
                }
            }
        }
        s.push_back(best);
        in[best] = 1;
    }
    return s;
}

} // namespace

TEST_CASE("one-hop marginal gain") {
    const auto f = InfluenceField::from_edges(3, Edges{{0, 1, 0.4}});
    CHECK(marginal_gain_l1(f, {}, 2) == 1.0);
    CHECK(marginal_gain_l1(f, std::vector<NodeId>{1}, 2) == 1.0);
    CHECK(marginal_gain_l1(f, {}, 0) == 1.4);
    CHECK(marginal_gain_l1(f, std::vector<NodeId>{2}, 0) == 1.4);
    CHECK(marginal_gain_l1(f, std::vector<NodeId>{1}, 0) == 1.0);
    CHECK_THROWS_AS(marginal_gain_l1(f, std::vector<NodeId>{0}, 0), AlreadySeed);
}

TEST_CASE("two-hop marginal gain") {
    const auto f = InfluenceField::from_edges(4, Edges{{0, 1, 0.5}, {1, 2, 0.4}});
    CHECK(marginal_gain_l2(f, {}, 3) == 1.0);
    CHECK(marginal_gain_l2(f, {}, 0) == doctest::Approx(1.7));
    CHECK(marginal_gain_l2(f, std::vector<NodeId>{2}, 0) == doctest::Approx(1.5));
    CHECK(marginal_gain_l2(f, std::vector<NodeId>{1}, 0) == doctest::Approx(1.2));
    CHECK_THROWS_AS(marginal_gain_l2(f, std::vector<NodeId>{0}, 0), AlreadySeed);
}

TEST_CASE("gains against the dense oracle") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 12;
        const auto f = testing::random_field(rng, n, 0.35);
        const testing::Dense d(f);
        const auto s = testing::random_subset(rng, n, 0.3);
        for (NodeId x = 0; x < n; ++x) {
            if (std::find(s.begin(), s.end(), x) != s.end()) {
                continue;
            }
            CHECK(marginal_gain_l1(f, s, x) == doctest::Approx(oracle_gain(d, s, x, 1)).epsilon(1e-12));
            CHECK(marginal_gain_l2(f, s, x) == doctest::Approx(oracle_gain(d, s, x, 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("lazy greedy") {
    const auto f = InfluenceField::from_edges(
        4, Edges{{0, 1, 0.3}, {0, 2, 0.4}, {3, 0, 0.5}, {1, 2, 0.2}});
    SUBCASE("k = 1 takes the best first gain") {
        const auto r = celf_select(f, 1);
        CHECK(r.seeds == std::vector<NodeId>{0});
        CHECK(r.marginal_gains[0] == doctest::Approx(1.7));
    }
    SUBCASE("k = |V| covers every node") {
        for (Level lv : {Level::One, Level::Two}) {
            const auto r = celf_select(f, 4, {lv});
            CHECK(r.seeds.size() == 4);
            CHECK(r.sigma_curve.back() == 4.0);
        }
    }
    SUBCASE("equals plain greedy on the four-node example") {
        CHECK(celf_select(f, 2).seeds == naive_greedy(f, 2).seeds);
    }
    SUBCASE("k out of range") {
        CHECK_THROWS_AS(celf_select(f, 0), KTooLarge);
        CHECK_THROWS_AS(celf_select(f, 5), KTooLarge);
        CHECK_THROWS_AS(naive_greedy(f, 5), KTooLarge);
    }
    SUBCASE("ties go to the smaller id") {
        const auto empty = InfluenceField::from_edges(5, Edges{});
        CHECK(celf_select(empty, 3).seeds == std::vector<NodeId>{0, 1, 2});
    }
}

TEST_CASE("lazy greedy against oracles on random fields") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 18;
        const std::size_t k = 1 + rng() % std::min<std::size_t>(5, n);
        const auto f = testing::random_field(rng, n, 0.3);
        const testing::Dense d(f);
        for (int level : {1, 2}) {
            const SelectionOptions opt{static_cast<Level>(level)};
            const auto lazy = celf_select(f, k, opt);
            CHECK(lazy.seeds == naive_greedy(f, k, opt).seeds);
            CHECK(lazy.seeds == oracle_greedy(d, k, level));
            CHECK(lazy.gain_evaluations <= n * k);
            // Gains used at selection time are fresh.
            for (std::size_t i = 0; i < k; ++i) {
                const std::vector<NodeId> prefix(lazy.seeds.begin(), lazy.seeds.begin() + i);
                const double fresh = level == 1 ? marginal_gain_l1(f, prefix, lazy.seeds[i])
                                                : marginal_gain_l2(f, prefix, lazy.seeds[i]);
                CHECK(lazy.marginal_gains[i] == fresh);
                CHECK(lazy.sigma_curve[i] ==
                      doctest::Approx(d.sigma(std::vector<NodeId>(lazy.seeds.begin(),
                                                                   lazy.seeds.begin() + i + 1),
                                              level))
                          .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("exact gains telescope into the spread curve") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + rng() % 15;
        const std::size_t k = 1 + rng() % std::min<std::size_t>(5, n);
        const auto f = testing::random_field(rng, n, 0.3);
        for (Level lv : {Level::One, Level::Two}) {
            for (Saturation sat : {Saturation::None, Saturation::Unit}) {
                const SelectionOptions opt{lv, GainMode::Exact, sat};
                const auto r = celf_select(f, k, opt);
                CHECK(r.seeds == naive_greedy(f, k, opt).seeds);
                double previous = 0.0;
                for (std::size_t i = 0; i < k; ++i) {
                    CHECK(std::abs(r.sigma_curve[i] - previous - r.marginal_gains[i]) <= 1e-9);
                    if (sat == Saturation::Unit) {
                        CHECK(r.sigma_curve[i] >= previous - 1e-12);
                    }
                    previous = r.sigma_curve[i];
                }
            }
        }
    }
}

TEST_CASE("exhaustive optimum") {
    std::mt19937_64 rng(5);
    const auto f = testing::random_field(rng, 8, 0.4);
    const testing::Dense d(f);
    const auto all = exhaustive_opt(f, 8, Level::One);
    CHECK(all.seeds == std::vector<NodeId>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(all.sigma == 8.0);
    CHECK(exhaustive_opt(f, 1, Level::Two).seeds == celf_select(f, 1, {Level::Two}).seeds);

    // Independent enumeration of pairs.
    double best = -1.0;
    for (NodeId a = 0; a < 8; ++a) {
        for (NodeId b = a + 1; b < 8; ++b) {
            best = std::max(best, d.sigma({a, b}, 1));
        }
    }
    CHECK(exhaustive_opt(f, 2, Level::One).sigma == doctest::Approx(best).epsilon(1e-12));

    CHECK_THROWS_AS(exhaustive_opt(InfluenceField::from_edges(100, Edges{}), 5, Level::One),
                    TooLargeToEnumerate);
    CHECK_THROWS_AS(exhaustive_opt(f, 9, Level::One), KTooLarge);
}

TEST_CASE("greedy approximation with saturated credit") {
    std::mt19937_64 rng(41);
    const double bound = 1.0 - std::exp(-1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 4 + rng() % 9;
        const std::size_t k = 1 + rng() % 3;
        const auto f = testing::random_field(rng, n, 0.4);
        for (Level lv : {Level::One, Level::Two}) {
            const SelectionOptions opt{lv, GainMode::Exact, Saturation::Unit};
            const auto g = celf_select(f, k, opt);
            const auto best = exhaustive_opt(f, k, lv, Saturation::Unit);
            CHECK(g.sigma_curve.back() >= bound * best.sigma - 1e-9);
        }
    }
}

TEST_CASE("seed csv") {
    SeedResult r;
    r.seeds = {1, 0};
    r.marginal_gains = {1.5, 1.0};
    r.sigma_curve = {1.5, 2.5};
    std::ostringstream out;
    const std::vector<std::string> names{"a", "b"};
    write_seeds_csv(out, names, r);
    CHECK(out.str() == "rank,node,marginal_gain,sigma_cumulative\n1,b,1.5,1.5\n2,a,1,2.5\n");
}
