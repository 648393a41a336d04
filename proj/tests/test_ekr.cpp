#include <algorithm>
#include <bitset>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shadowkit/ekr.hpp"
#include "shadowkit/generators.hpp"

using namespace shadowkit;

namespace {

KGraph make(int n, int r, const std::vector<std::vector<int>>& edges) {
    std::vector<Mask> m;
    for (const auto& e : edges) m.push_back(from_members(e));
    return KGraph(n, r, m);
}

KGraph relabel(const KGraph& g, const std::vector<int>& perm) {
    std::vector<Mask> out;
    for (Mask e : g.edges()) {
        Mask f = 0;
        for (int v : members(e)) f |= bit(perm[static_cast<std::size_t>(v)]);
        out.push_back(f);
    }
    return KGraph(g.n(), g.r(), out);
}

// Bron-Kerbosch over the "meets" graph of all r-sets: every maximum
// intersecting family, independent of the library's branch and bound.
void maximum_cliques(const std::vector<oracle::Set>& sets, std::vector<int>& current, std::vector<int> cand,
                     std::vector<int> excluded, std::size_t& best, std::vector<std::vector<int>>& found) {
    if (cand.empty() && excluded.empty()) {
        if (current.size() > best) {
            best = current.size();
            found.clear();
        }
        if (current.size() == best) found.push_back(current);
        return;
    }
    if (current.size() + cand.size() < best) return;
    auto meets = [&](int a, int b) {
        for (int x : sets[static_cast<std::size_t>(a)])
            if (std::count(sets[static_cast<std::size_t>(b)].begin(), sets[static_cast<std::size_t>(b)].end(), x))
                return true;
        return false;
    };
    while (!cand.empty()) {
        const int v = cand.back();
        cand.pop_back();
        std::vector<int> nc, nx;
        for (int u : cand)
            if (meets(u, v)) nc.push_back(u);
        for (int u : excluded)
            if (meets(u, v)) nx.push_back(u);
        current.push_back(v);
        maximum_cliques(sets, current, nc, nx, best, found);
        current.pop_back();
        excluded.push_back(v);
    }
}

}  // namespace

TEST(Intersecting, Examples) {
    EXPECT_TRUE(is_intersecting(gen_star(6, 3, 2)));
    EXPECT_FALSE(is_intersecting(make(4, 2, {{0, 1}, {2, 3}})));
    EXPECT_TRUE(is_intersecting(make(3, 2, {{0, 1}, {0, 2}, {1, 2}})));
    EXPECT_TRUE(is_intersecting(KGraph(5, 2, {})));
}

TEST(Intersecting, MatchesOracle) {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 500; ++t) {
        const KGraph g = gen_random(7, 3, 1 + rng() % 8, rng());
        EXPECT_EQ(is_intersecting(g), oracle::intersecting(oracle::family(g)));
    }
}

TEST(EKRCheck, FullStar) {
    const EKRReport rep = ekr_check(gen_star(7, 3, 4));
    EXPECT_EQ(rep.size, 15u);
    EXPECT_EQ(rep.bound, 15u);
    EXPECT_TRUE(rep.equality);
    EXPECT_EQ(rep.center, 4);
    EXPECT_TRUE(rep.uniqueness_ok);
}

TEST(EKRCheck, Triangle) {
    const EKRReport rep = ekr_check(make(5, 2, {{0, 1}, {0, 2}, {1, 2}}));
    EXPECT_EQ(rep.size, 3u);
    EXPECT_EQ(rep.bound, 4u);
    EXPECT_TRUE(rep.satisfied);
    EXPECT_FALSE(rep.equality);
}

TEST(EKRCheck, RejectsNonIntersecting) {
    EXPECT_THROW(ekr_check(make(4, 2, {{0, 1}, {2, 3}})), precondition_error);
}

TEST(EKRCheck, TrivialRegime) {
    const EKRReport rep = ekr_check(complete_graph(5, 3));
    EXPECT_TRUE(rep.trivial_regime);
    EXPECT_TRUE(rep.satisfied);
}

TEST(EKRCheck, EveryIntersectingGraphOnFive) {
    std::size_t intersecting = 0;
    for_each_rgraph(5, 2, [&](const KGraph& g) {
        if (!oracle::intersecting(oracle::family(g))) return;
        ++intersecting;
        const EKRReport rep = ekr_check(g);
        EXPECT_LE(g.size(), 4u);
        EXPECT_TRUE(rep.satisfied && rep.uniqueness_ok);
    });
    // empty, 10 single edges, stars and triangles
    EXPECT_GT(intersecting, 11u);
}

TEST(Complement, CompleteGraph) {
    const auto [H, J] = complement_pair(complete_graph(4, 2));
    EXPECT_TRUE(H.empty());
    EXPECT_EQ(J, complete_graph(4, 2));
}

TEST(Complement, StarInCompleteGraph) {
    const auto [H, J] = complement_pair(gen_star(4, 2, 0));
    EXPECT_EQ(H, make(4, 2, {{1, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(J, make(4, 2, {{2, 3}, {1, 3}, {1, 2}}));
}

TEST(Complement, SizeIdentity) {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 300; ++t) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const int r = 1 + static_cast<int>(rng() % (n - 1));
        const KGraph g = gen_random(n, r, rng() % (binomial(n, r) + 1), rng());
        const auto [H, J] = complement_pair(g);
        EXPECT_EQ(H.size() + g.size(), binomial(n, r));
        EXPECT_EQ(J.size(), g.size());
        EXPECT_EQ(J.r(), n - r);
    }
}

TEST(ComplementCliques, ExhaustiveOnSix) {
    std::size_t intersecting = 0;
    for_each_rgraph(6, 2, [&](const KGraph& g) {
        const ComplementCliqueReport rep = intersecting_iff_cliques(g);
        ASSERT_TRUE(rep.equivalent);
        ASSERT_EQ(rep.intersecting, oracle::intersecting(oracle::family(g)));
        if (rep.intersecting) {
            ++intersecting;
            ASSERT_TRUE(rep.clique_bound);
        }
    });
    EXPECT_GT(intersecting, 0u);
}

TEST(ComplementCliques, DisjointPairFails) {
    const ComplementCliqueReport rep = intersecting_iff_cliques(make(5, 2, {{0, 1}, {2, 3}}));
    EXPECT_FALSE(rep.intersecting);
    EXPECT_FALSE(rep.all_span);
    EXPECT_TRUE(rep.equivalent);
}

TEST(ComplementCliques, EmptyIsVacuous) {
    const ComplementCliqueReport rep = intersecting_iff_cliques(KGraph(5, 2, {}));
    EXPECT_TRUE(rep.intersecting && rep.all_span && rep.equivalent);
}

TEST(ComplementCliques, RequiresRBelowN) {
    EXPECT_THROW(intersecting_iff_cliques(complete_graph(3, 3)), domain_error);
}

TEST(Certificate, FullStar) {
    const EKRCertificate c = stability_certificate(gen_star(7, 3, 0));
    EXPECT_EQ(c.delta, 0.0);
    EXPECT_EQ(c.uncovered, 0u);
    EXPECT_TRUE(c.hyp_intstab1 && c.hyp_intstab2);
    EXPECT_TRUE(c.concl_intstab1 && c.concl_intstab2);
    EXPECT_FALSE(c.violated());
}

TEST(Certificate, PerturbedStar) {
    const KGraph star = gen_star(7, 3, 0);
    std::vector<Mask> e;
    for (Mask s : star.edges())
        if (s != from_members({0, 5, 6}) && s != from_members({0, 4, 6}) && s != from_members({0, 4, 5}))
            e.push_back(s);
    e.push_back(from_members({1, 2, 3}));
    const KGraph g(7, 3, e);
    ASSERT_TRUE(is_intersecting(g));
    const EKRCertificate c = stability_certificate(g);
    EXPECT_EQ(g.size(), 13u);
    EXPECT_EQ(c.v, 0);
    EXPECT_EQ(c.uncovered, 1u);
    EXPECT_EQ(c.covered + c.uncovered, g.size());
    EXPECT_NEAR(c.delta, 2.0 / 15.0, 1e-12);
}

TEST(Certificate, RegimeError) {
    try {
        stability_certificate(gen_star(6, 3, 0));
        FAIL();
    } catch (const domain_error& e) {
        EXPECT_EQ(std::string(e.what()), "EKR regime requires r < n/2");
    }
}

TEST(Certificate, BestCenterFollowsRelabelling) {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 200; ++t) {
        const int n = 7 + static_cast<int>(rng() % 4);
        const int r = 2 + static_cast<int>(rng() % 2);
        KGraph g;
        try {
            g = gen_star_perturbed(n, r, static_cast<int>(rng() % n), rng() % 4, rng() % 2, rng());
        } catch (const domain_error&) {
            continue;
        }
        if (g.empty()) continue;
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const EKRCertificate a = stability_certificate(g);
        const EKRCertificate b = stability_certificate(relabel(g, perm));
        EXPECT_EQ(a.covered, b.covered);
        EXPECT_EQ(a.uncovered, b.uncovered);
        const auto deg = g.degrees();
        if (std::count(deg.begin(), deg.end(), a.covered) == 1) {
            EXPECT_EQ(b.v, perm[static_cast<std::size_t>(a.v)]);
        }
    }
}

TEST(Certificate, ConclusionsNeverFailUnderHypotheses) {
    std::mt19937_64 rng(54);
    int under = 0;
    for (int t = 0; t < 2000; ++t) {
        const int n = 5 + static_cast<int>(rng() % 8);
        const int r = 1 + static_cast<int>(rng() % ((n - 1) / 2));
        const Count removed = rng() % 3;
        const Count foreign = r == 1 ? 0 : rng() % 3;
        KGraph g;
        try {
            g = gen_star_perturbed(n, r, static_cast<int>(rng() % n), removed, foreign, rng());
        } catch (const domain_error&) {
            continue;
        }
        if (g.empty()) continue;
        const EKRCertificate c = stability_certificate(g);
        EXPECT_FALSE(c.violated());
        under += c.hyp_intstab1 || c.hyp_intstab2;
    }
    EXPECT_GT(under, 0);
}

TEST(Search, StarsAreTheOnlyMaximumFamilies) {
    for (int n = 5; n <= 8; ++n)
        for (int r = 1; 2 * r < n; ++r) {
            const MaxIntersectingSearch s = search_max_intersecting(n, r);
            EXPECT_EQ(s.target, binomial(n - 1, r - 1));
            EXPECT_EQ(s.families, static_cast<Count>(r)) << n << " " << r;
            EXPECT_TRUE(s.all_stars());
        }
}

TEST(Search, AgreesWithBronKerbosch) {
    for (auto [n, r] : std::vector<std::pair<int, int>>{{5, 2}, {6, 2}, {7, 3}}) {
        const auto sets = oracle::combinations(oracle::range(n), r);
        std::vector<int> cand(sets.size());
        std::iota(cand.begin(), cand.end(), 0);
        std::vector<int> current;
        std::size_t best = 0;
        std::vector<std::vector<int>> found;
        maximum_cliques(sets, current, cand, {}, best, found);
        EXPECT_EQ(best, oracle::binom(n - 1, r - 1));
        // each maximum family is a star: n of them
        EXPECT_EQ(found.size(), static_cast<std::size_t>(n));
        for (const auto& fam : found) {
            std::vector<int> count(static_cast<std::size_t>(n), 0);
            for (int id : fam)
                for (int v : sets[static_cast<std::size_t>(id)]) ++count[static_cast<std::size_t>(v)];
            EXPECT_EQ(*std::max_element(count.begin(), count.end()), static_cast<int>(best));
        }
        // the library counts only families through the first set, which lies in r stars
        EXPECT_EQ(search_max_intersecting(n, r).families, static_cast<Count>(r));
    }
}

TEST(Search, RegimeChecks) {
    EXPECT_THROW(search_max_intersecting(6, 3), domain_error);
    EXPECT_THROW(search_max_intersecting(12, 5), domain_error);
}
