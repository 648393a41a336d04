#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shadowkit/cayley.hpp"
#include "shadowkit/generators.hpp"

using namespace shadowkit;

namespace {

KGraph make(int n, int r, const std::vector<std::vector<int>>& edges) {
    std::vector<Mask> m;
    for (const auto& e : edges) m.push_back(from_members(e));
    return KGraph(n, r, m);
}

double dense_second_eigenvalue(const CayleyGraph& c) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.adjacency_matrix(), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return ev(ev.size() - 2);
}

// Components of the complete cyclic orders under adjacent swaps of the first
// n-1 positions, computed on permutation vectors with a union-find.
struct OracleComponents {
    std::size_t complete = 0;
    std::size_t components = 0;
    std::size_t largest = 0;
};

OracleComponents oracle_components(const KGraph& g) {
    const int n = g.n();
    const auto fam = oracle::family(g);
    auto is_complete = [&](const std::vector<int>& p) {
        std::set<oracle::Set> hit;
        for (int x = 0; x < n; ++x) {
            oracle::Set e;
            for (int k = 0; k < g.r(); ++k) e.push_back(p[static_cast<std::size_t>((x + k) % n)]);
            std::sort(e.begin(), e.end());
            if (fam.count(e)) hit.insert(e);
        }
        return static_cast<int>(hit.size()) == g.r();
    };
    std::map<std::vector<int>, std::size_t> id;
    std::vector<std::vector<int>> perms;
    std::vector<int> p = oracle::range(n - 1);
    do {
        std::vector<int> full = p;
        full.push_back(n - 1);
        if (is_complete(full)) {
            id[full] = perms.size();
            perms.push_back(full);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::size_t> parent(perms.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (int j = 0; j + 1 < n - 1; ++j) {
            std::vector<int> q = perms[i];
            std::swap(q[static_cast<std::size_t>(j)], q[static_cast<std::size_t>(j + 1)]);
            const auto it = id.find(q);
            if (it != id.end()) parent[find(i)] = find(it->second);
        }
    std::map<std::size_t, std::size_t> sizes;
    for (std::size_t i = 0; i < perms.size(); ++i) ++sizes[find(i)];
    OracleComponents out;
    out.complete = perms.size();
    out.components = sizes.size();
    for (auto [root, s] : sizes) out.largest = std::max(out.largest, s);
    return out;
}

}  // namespace

TEST(Lehmer, RoundTripAndLexicographicOrder) {
    for (int m = 1; m <= 6; ++m) {
        std::vector<int> p = oracle::range(m);
        std::size_t expect = 0;
        do {
            EXPECT_EQ(lehmer_rank(p), expect);
            EXPECT_EQ(lehmer_unrank(expect, m), p);
            ++expect;
        } while (std::next_permutation(p.begin(), p.end()));
        EXPECT_EQ(expect, factorial(m));
    }
}

TEST(CayleyGraph, SmallStructure) {
    const CayleyGraph c3(3);
    EXPECT_EQ(c3.size(), 2u);
    EXPECT_EQ(c3.degree(), 1);
    EXPECT_EQ(c3.neighbor(0, 0), 1u);
    const CayleyGraph c4(4);
    EXPECT_EQ(c4.size(), 6u);
    EXPECT_EQ(c4.degree(), 2);
    const CayleyGraph c5(5);
    EXPECT_EQ(c5.size(), 24u);
    EXPECT_EQ(c5.degree(), 3);
    EXPECT_THROW(CayleyGraph(2), domain_error);
    EXPECT_THROW(CayleyGraph(9), domain_error);
}

TEST(CayleyGraph, SwapsAreInvolutions) {
    for (int n = 3; n <= 8; ++n) {
        const CayleyGraph c(n);
        for (std::size_t v = 0; v < c.size(); ++v) {
            const auto p = lehmer_unrank(v, n - 1);
            for (int j = 0; j < c.degree(); ++j) {
                const std::size_t w = c.neighbor(v, j);
                ASSERT_EQ(c.neighbor(w, j), v);
                auto q = p;
                std::swap(q[static_cast<std::size_t>(j)], q[static_cast<std::size_t>(j + 1)]);
                ASSERT_EQ(lehmer_unrank(w, n - 1), q);
            }
        }
    }
}

TEST(CayleyGraph, ApplyMatchesDenseAdjacency) {
    const CayleyGraph c(6);
    const Eigen::MatrixXd a = c.adjacency_matrix();
    EXPECT_TRUE(a.isApprox(a.transpose()));
    EXPECT_EQ(a.rowwise().sum(), Eigen::VectorXd::Constant(static_cast<Eigen::Index>(c.size()), 4.0));
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(static_cast<Eigen::Index>(c.size()), 3);
    EXPECT_LT((c.apply(x) - a * x).norm(), 1e-12);
}

TEST(SecondEigenvalue, SmallCases) {
    const EigenResult e3 = second_eigenvalue(CayleyGraph(3));
    EXPECT_NEAR(e3.lambda2, -1.0, 1e-10);
    const EigenResult e4 = second_eigenvalue(CayleyGraph(4));
    EXPECT_NEAR(e4.lambda2, 1.0, 1e-10);
    EXPECT_TRUE(e4.converged);
}

TEST(SecondEigenvalue, AgreesWithDenseSolverAndClosedForm) {
    for (int n = 3; n <= 7; ++n) {
        const CayleyGraph c(n);
        const EigenResult it = second_eigenvalue(c);
        const double dense = dense_second_eigenvalue(c);
        const double closed = c.degree() - bacher_gap(n);
        EXPECT_TRUE(it.converged) << n;
        EXPECT_LT(std::abs(it.lambda2 - dense), 1e-8) << n;
        EXPECT_LT(std::abs(dense - closed), 1e-8) << n;
        EXPECT_LT(std::abs(it.residual), 1e-8) << n;
    }
}

TEST(SecondEigenvalue, SeedIndependent) {
    const CayleyGraph c(6);
    EXPECT_NEAR(second_eigenvalue(c, 1e-12, 200000, 1).lambda2, second_eigenvalue(c, 1e-12, 200000, 99).lambda2, 1e-9);
}

TEST(Expansion, BoundarySizeExamples) {
    const CayleyGraph c(5);
    std::vector<char> in(c.size(), 0);
    in[0] = 1;
    EXPECT_EQ(boundary_size(c, in), 3u);
    std::fill(in.begin(), in.end(), 1);
    EXPECT_EQ(boundary_size(c, in), 0u);
    // the even permutations: every neighbor is odd
    std::fill(in.begin(), in.end(), 0);
    for (std::size_t v = 0; v < c.size(); ++v) {
        const auto p = lehmer_unrank(v, 4);
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inv += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
        in[v] = inv % 2 == 0;
    }
    EXPECT_EQ(boundary_size(c, in), 12u);
}

TEST(Expansion, HoldsOnSmallGraphs) {
    for (int n = 4; n <= 8; ++n) {
        const ExpansionReport rep = expansion_check(CayleyGraph(n), 200, static_cast<std::uint64_t>(n));
        EXPECT_TRUE(rep.holds()) << n;
        EXPECT_TRUE(rep.alpha_exceeds) << n;
        EXPECT_GT(rep.samples, 200u);
        EXPECT_GE(rep.min_ratio, rep.threshold);
    }
}

TEST(Component, FullStar) {
    const ComponentReport rep = complete_component(gen_star(5, 2, 3));
    EXPECT_EQ(rep.orders, 24u);
    EXPECT_EQ(rep.complete_orders, 24u);
    EXPECT_EQ(rep.components, 1u);
    EXPECT_EQ(rep.largest, 24u);
    EXPECT_EQ(rep.center, 3);
    EXPECT_EQ(rep.center_degree, 4u);
    EXPECT_TRUE(rep.hypothesis);
    EXPECT_TRUE(rep.complete_count_bound && rep.component_bound && rep.strong_component_bound);
    EXPECT_TRUE(rep.center_count_exact && rep.center_degree_bound);
}

TEST(Component, StarMinusAnEdgeMeetsStrongFormExactly) {
    std::vector<Mask> e;
    const KGraph star = gen_star(6, 2, 0);
    for (Mask s : star.edges())
        if (s != from_members({0, 5})) e.push_back(s);
    const ComponentReport rep = complete_component(KGraph(6, 2, e));
    EXPECT_NEAR(rep.delta, 0.2, 1e-12);
    EXPECT_EQ(rep.complete_orders, 72u);
    EXPECT_EQ(rep.largest, 72u);
    EXPECT_EQ(rep.components, 1u);
    EXPECT_EQ(rep.center, 0);
    EXPECT_TRUE(rep.strong_component_bound);
    EXPECT_FALSE(rep.hypothesis);
}

TEST(Component, StrongFormFailsForTriangle) {
    const ComponentReport rep = complete_component(make(5, 2, {{0, 1}, {0, 2}, {1, 2}}));
    EXPECT_LT(rep.largest, 12u);
    EXPECT_FALSE(rep.strong_component_bound);
    EXPECT_TRUE(rep.component_bound);
    EXPECT_TRUE(rep.complete_count_bound);
}

TEST(Component, EmptyFamily) {
    const ComponentReport rep = complete_component(KGraph(5, 2, {}));
    EXPECT_EQ(rep.complete_orders, 0u);
    EXPECT_EQ(rep.components, 0u);
    EXPECT_EQ(rep.largest, 0u);
    EXPECT_FALSE(rep.center.has_value());
}

TEST(Component, Preconditions) {
    EXPECT_THROW(complete_component(make(5, 2, {{0, 1}, {2, 3}})), precondition_error);
    EXPECT_THROW(complete_component(gen_star(9, 2, 0)), domain_error);
}

TEST(Component, MatchesUnionFindOracle) {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 60; ++t) {
        const int n = 5 + static_cast<int>(rng() % 3);
        const int r = n == 7 && rng() % 2 ? 3 : 2;
        KGraph g;
        try {
            g = gen_star_perturbed(n, r, static_cast<int>(rng() % n), rng() % 4, rng() % 3, rng());
        } catch (const domain_error&) {
            continue;
        }
        const ComponentReport rep = complete_component(g);
        const OracleComponents o = oracle_components(g);
        EXPECT_EQ(rep.complete_orders, o.complete);
        EXPECT_EQ(rep.components, o.components);
        EXPECT_EQ(rep.largest, o.largest);
        EXPECT_TRUE(rep.complete_count_bound && rep.component_bound);
        if (rep.single_center) {
            EXPECT_TRUE(rep.center_count_exact);
        }
    }
}
