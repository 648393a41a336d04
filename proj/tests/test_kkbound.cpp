#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shadowkit/generators.hpp"
#include "shadowkit/kkbound.hpp"

using namespace shadowkit;

namespace {

KGraph make(int n, int r, const std::vector<std::vector<int>>& edges) {
    std::vector<Mask> m;
    for (const auto& e : edges) m.push_back(from_members(e));
    return KGraph(n, r, m);
}

const KGraph c4 = make(4, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

}  // namespace

TEST(Lovasz, CompleteThreeGraphOnSix) {
    const KKReport rep = lovasz_check(complete_graph(6, 3));
    EXPECT_EQ(rep.x, 6.0);
    EXPECT_EQ(rep.count, 15u);
    EXPECT_DOUBLE_EQ(rep.bound, 15.0);
    EXPECT_TRUE(rep.satisfied);
    EXPECT_TRUE(rep.equality);
    EXPECT_EQ(rep.equality_witness, 6);
}

TEST(Lovasz, FourCycle) {
    const KKReport rep = lovasz_check(c4);
    const double x = (1 + std::sqrt(33.0)) / 2;
    EXPECT_NEAR(rep.x, x, 1e-12);
    EXPECT_EQ(rep.count, 0u);
    // x(x-1) = 8, so binom(x, 3) = 8(x-2)/6
    EXPECT_NEAR(rep.bound, 8 * (x - 2) / 6, 1e-12);
    EXPECT_NEAR(rep.bound, 1.8297, 1e-4);
    EXPECT_TRUE(rep.satisfied);
    EXPECT_FALSE(rep.equality);
}

TEST(Lovasz, EmptyGraph) {
    const KKReport rep = lovasz_check(KGraph(5, 3, {}));
    EXPECT_EQ(rep.x, 2.0);
    EXPECT_EQ(rep.bound, 0.0);
    EXPECT_TRUE(rep.satisfied);
}

TEST(Lovasz, IsolatedVerticesIgnoredForEquality) {
    const KGraph g = complete_on(from_members({1, 3, 4, 6}), 8, 2);
    const KKReport rep = lovasz_check(g);
    EXPECT_TRUE(rep.equality);
    EXPECT_EQ(rep.equality_witness, 4);
}

// Clique counts come from the brute-force oracle; the bound from a
// long-double root. Equality must occur exactly at complete graphs with
// integral x.
TEST(Lovasz, ExhaustiveAgainstOracle) {
    for (auto [r, top] : std::vector<std::pair<int, int>>{{2, 6}, {3, 5}}) {
        for (int n = r; n <= top; ++n)
            for_each_rgraph(n, r, [&, r = r, n = n](const KGraph& g) {
                if (g.empty()) return;
                const KKReport rep = lovasz_check(g);
                const auto fam = oracle::family(g);
                const auto cl = oracle::cliques(fam, n, r, r + 1);
                ASSERT_EQ(rep.count, cl);
                const long double x = oracle::solve_x(static_cast<long double>(g.size()), r);
                const long double bound = oracle::gbinom(x, r + 1);
                ASSERT_LE(static_cast<long double>(cl), bound + 1e-9L);
                const Mask sup = g.support();
                const bool complete = g.size() == oracle::binom(popcount(sup), r);
                ASSERT_EQ(rep.equality, complete) << "n=" << n << " edges=" << g.size();
            });
    }
}

TEST(Lovasz, ExtremalTableEqualityOnlyAtCompleteGraphs) {
    for (auto [n, r] : std::vector<std::pair<int, int>>{{6, 2}, {5, 3}}) {
        for (const auto& [m, best] : extremal_clique_table(n, r)) {
            if (m == 0) continue;
            const double bound = gbinom(solve_x(m, r), r + 1);
            EXPECT_LE(static_cast<double>(best), bound + kBoundTolerance);
            const bool reaches = std::abs(static_cast<double>(best) - bound) <= kBoundTolerance;
            EXPECT_EQ(reaches, integral_root(m, r).has_value() && *integral_root(m, r) <= n) << "m=" << m;
        }
    }
}

TEST(Shadow, CompleteThreeGraphOnFive) {
    const KKReport rep = shadow_check(complete_graph(5, 3));
    EXPECT_EQ(rep.count, 10u);
    EXPECT_DOUBLE_EQ(rep.bound, 10.0);
    EXPECT_TRUE(rep.satisfied);
    EXPECT_TRUE(rep.equality);
    EXPECT_TRUE(rep.cross_check);
}

TEST(Shadow, FourCycle) {
    const KKReport rep = shadow_check(c4);
    EXPECT_EQ(rep.count, 4u);
    EXPECT_NEAR(rep.bound, 3.3723, 1e-4);
    EXPECT_TRUE(rep.satisfied);
}

TEST(Shadow, SmallThreeGraphsExhaustive) {
    // all 3-graphs on 6 vertices with at most 8 edges
    const std::vector<Mask> all = all_subsets(6, 3);
    std::size_t checked = 0;
    std::function<void(std::size_t, std::vector<Mask>&)> walk = [&](std::size_t i, std::vector<Mask>& pick) {
        if (!pick.empty()) {
            const KGraph g(KGraph::canonical, 6, 3, pick);
            const KKReport rep = shadow_check(g);
            const auto sh = oracle::shadow(oracle::family(g), 2);
            ASSERT_EQ(rep.count, sh.size());
            const long double x = oracle::solve_x(static_cast<long double>(g.size()), 3);
            ASSERT_GE(static_cast<long double>(sh.size()) + 1e-9L, oracle::gbinom(x, 2));
            ASSERT_TRUE(rep.satisfied && rep.cross_check);
            ++checked;
        }
        if (pick.size() == 8) return;
        for (std::size_t j = i; j < all.size(); ++j) {
            pick.push_back(all[j]);
            walk(j + 1, pick);
            pick.pop_back();
        }
    };
    std::vector<Mask> pick;
    walk(0, pick);
    std::size_t expect = 0;
    for (int k = 1; k <= 8; ++k) expect += oracle::binom(20, k);
    EXPECT_EQ(checked, expect);
}

TEST(IteratedShadow, Examples) {
    const KGraph g = gen_random(7, 3, 12, 5);
    const KKReport top = iterated_shadow_check(g, 3);
    EXPECT_EQ(top.count, g.size());
    EXPECT_NEAR(top.bound, static_cast<double>(g.size()), 1e-9);
    const KKReport k6 = iterated_shadow_check(complete_graph(6, 3), 1);
    EXPECT_EQ(k6.count, 6u);
    EXPECT_TRUE(k6.satisfied && k6.equality);
}

TEST(IteratedShadow, RandomThreeGraphs) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10000; ++t) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const KGraph g = gen_random(n, 3, 1 + rng() % binomial(n, 3), rng());
        for (int s = 0; s <= 3; ++s) ASSERT_TRUE(iterated_shadow_check(g, s).satisfied);
    }
}

TEST(Chained, CompleteGraph) {
    const ChainedCliqueReport rep = chained_clique_check(complete_graph(5, 2), 2, 4);
    EXPECT_EQ(rep.target_count, 5u);
    EXPECT_DOUBLE_EQ(rep.bound, 5.0);
    EXPECT_TRUE(rep.satisfied);
    EXPECT_TRUE(rep.chain_monotone);
}

TEST(Chained, FourCyclePlusChord) {
    const KGraph g = make(4, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
    const ChainedCliqueReport rep = chained_clique_check(g, 3, 4);
    EXPECT_EQ(rep.base_count, 2u);
    EXPECT_NEAR(gbinom(rep.x, 3), 2.0, 1e-12);
    EXPECT_EQ(rep.target_count, 0u);
    EXPECT_TRUE(rep.satisfied);
}

TEST(Chained, VacuousWithoutBaseCliques) {
    const ChainedCliqueReport rep = chained_clique_check(c4, 3, 4);
    EXPECT_TRUE(rep.vacuous);
    EXPECT_TRUE(rep.satisfied);
}

TEST(Chained, ExhaustiveGraphsOnSix) {
    for (int n = 2; n <= 6; ++n)
        for_each_rgraph(n, 2, [&](const KGraph& g) {
            if (g.empty()) return;
            for (int l = 2; l <= n; ++l)
                for (int m = l; m <= n; ++m) {
                    const ChainedCliqueReport rep = chained_clique_check(g, l, m);
                    ASSERT_TRUE(rep.satisfied && rep.chain_monotone);
                    ASSERT_EQ(rep.target_count, oracle::cliques(oracle::family(g), n, 2, m));
                }
        });
}

TEST(Chained, Preconditions) {
    EXPECT_THROW(chained_clique_check(c4, 1, 3), domain_error);
    EXPECT_THROW(chained_clique_check(c4, 3, 2), domain_error);
    EXPECT_THROW(chained_clique_check(c4, 2, 5), domain_error);
}

TEST(VertexBounds, RandomGraphs) {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 2000; ++t) {
        const int r = 2 + static_cast<int>(rng() % 2);
        const int n = r + 1 + static_cast<int>(rng() % 5);
        const KGraph g = gen_random(n, r, 1 + rng() % binomial(n, r), rng());
        const VertexBoundReport rep = vertex_bounds(g);
        ASSERT_TRUE(rep.handshake && rep.degree_bound && rep.complement_bound);
        // equality in the clique bound iff all non-isolated degrees are binom(x-1, r-1) at integral x
        const KKReport lv = lovasz_check(g);
        if (lv.equality) {
            EXPECT_TRUE(rep.equality_degrees);
        }
    }
}

TEST(VertexBounds, PerVertexCountsMatchOracle) {
    const KGraph g = gen_random(7, 2, 14, 9);
    const auto per = vertex_clique_counts(g);
    const auto fam = oracle::family(g);
    for (int v = 0; v < 7; ++v) {
        std::uint64_t c = 0;
        for (const auto& t : oracle::combinations(oracle::range(7), 3)) {
            if (std::find(t.begin(), t.end(), v) == t.end()) continue;
            bool all = true;
            for (const auto& p : oracle::combinations(t, 2)) all = all && fam.count(p);
            c += all ? 1 : 0;
        }
        EXPECT_EQ(per[static_cast<std::size_t>(v)], c);
    }
}
