#pragma once

#include <map>
#include <optional>
#include <vector>

#include "shadowkit/gbinom.hpp"
#include "shadowkit/kgraph.hpp"

namespace shadowkit {

inline constexpr double kBoundTolerance = 1e-9;

/// Integer k with binomial(k, r) == m, if m is an integral binomial.
inline std::optional<int> integral_root(Count m, int r) {
    if (r < 1) return std::nullopt;
    if (m == 0) return std::nullopt;
    auto k = detail::exact_binomial_root(m, r);
    if (!k) return std::nullopt;
    return static_cast<int>(*k);
}

/// True iff the edges are all r-subsets of the non-isolated vertices.
inline bool is_complete_on_support(const KGraph& g) {
    const Mask s = g.support();
    return g.size() == binomial(popcount(s), g.r());
}

/// Result of comparing a clique or shadow count with binom(x, .).
struct KKReport {
    int n = 0;
    int r = 0;
    Count edges = 0;
    double x = 0.0;
    /// The exact count being bounded (cliques, or shadow size).
    Count count = 0;
    double bound = 0.0;
    bool satisfied = false;
    /// count == bound exactly (possible only at integral x).
    bool equality = false;
    std::optional<int> equality_witness;
    /// G is complete on its non-isolated vertices.
    bool complete_on_support = false;
    /// Secondary route result where the check has one (else true).
    bool cross_check = true;
};

namespace detail {

inline KKReport base_report(const KGraph& g) {
    KKReport rep;
    rep.n = g.n();
    rep.r = g.r();
    rep.edges = g.size();
    rep.x = g.empty() ? g.r() - 1.0 : solve_x(static_cast<Count>(g.size()), g.r());
    rep.complete_on_support = is_complete_on_support(g);
    return rep;
}

}  // namespace detail

/// K^r_{r+1}(G) <= binom(x, r+1) where |G| = binom(x, r).
inline KKReport lovasz_check(const KGraph& g) {
    if (g.r() < 1) throw domain_error("lovasz check requires r >= 1");
    KKReport rep = detail::base_report(g);
    if (g.empty()) {
        rep.bound = 0.0;
        rep.satisfied = true;
        return rep;
    }
    rep.count = count_cliques(g, g.r() + 1);
    rep.bound = gbinom(rep.x, g.r() + 1);
    rep.satisfied = static_cast<double>(rep.count) <= rep.bound + kBoundTolerance;
    if (auto k = integral_root(g.size(), g.r())) {
        rep.equality = rep.count == binomial(*k, g.r() + 1);
        if (rep.equality) rep.equality_witness = *k;
    }
    return rep;
}

/// |shadow(G)| >= binom(x, r-1); the cross-check confirms that every edge
/// spans a complete r-graph in the shadow, i.e. K^{r-1}_r(shadow) >= |G|.
inline KKReport shadow_check(const KGraph& g) {
    if (g.r() < 1) throw domain_error("shadow check requires r >= 1");
    KKReport rep = detail::base_report(g);
    const KGraph sh = shadow(g);
    rep.count = sh.size();
    rep.bound = g.empty() ? 0.0 : gbinom(rep.x, g.r() - 1);
    rep.satisfied = static_cast<double>(rep.count) + kBoundTolerance >= rep.bound;
    rep.cross_check = count_cliques(sh, g.r()) >= g.size();
    if (auto k = integral_root(g.size(), g.r())) {
        rep.equality = rep.count == binomial(*k, g.r() - 1);
        if (rep.equality) rep.equality_witness = *k;
    }
    return rep;
}

/// |s-shadow(G)| >= binom(x, s).
inline KKReport iterated_shadow_check(const KGraph& g, int s) {
    if (g.r() < 1) throw domain_error("shadow check requires r >= 1");
    if (s < 0 || s > g.r()) throw domain_error("iterated shadow requires 0 <= s <= r");
    KKReport rep = detail::base_report(g);
    rep.count = s_shadow(g, s).size();
    rep.bound = g.empty() ? 0.0 : gbinom(rep.x, s);
    rep.satisfied = static_cast<double>(rep.count) + kBoundTolerance >= rep.bound;
    if (auto k = integral_root(g.size(), g.r())) {
        rep.equality = rep.count == binomial(*k, s);
        if (rep.equality) rep.equality_witness = *k;
    }
    return rep;
}

/// Chain report for K^r_m(G) <= binom(x, m) where K^r_l(G) = binom(x, l).
struct ChainedCliqueReport {
    int l = 0;
    int m = 0;
    Count base_count = 0;  ///< K^r_l(G)
    double x = 0.0;
    Count target_count = 0;  ///< K^r_m(G)
    double bound = 0.0;
    bool vacuous = false;
    bool satisfied = false;
    /// x_k from K^r_k(G) = binom(x_k, k) for k = l..m, ending at the first
    /// empty level (x_k = k-1 there); nonincreasing.
    std::vector<double> chain;
    bool chain_monotone = true;
};

/// Runs the iterated route explicitly: the k-graph of K^r_k copies is fed to
/// the Lovasz bound to control the (k+1)-cliques, for k = l..m-1.
inline ChainedCliqueReport chained_clique_check(const KGraph& g, int l, int m) {
    if (!(g.r() <= l && l <= m && m <= g.n())) throw domain_error("chained check requires r <= l <= m <= n");
    ChainedCliqueReport rep;
    rep.l = l;
    rep.m = m;
    rep.base_count = count_cliques(g, l);
    rep.target_count = count_cliques(g, m);
    if (rep.base_count == 0) {
        rep.vacuous = m > l;
        rep.satisfied = rep.target_count == 0;
        rep.x = l - 1.0;
        return rep;
    }
    rep.x = solve_x(rep.base_count, l);
    // x >= l can lie below m - 1, where the polynomial goes negative
    rep.bound = gbinom_monotone(rep.x, m);
    rep.satisfied = static_cast<double>(rep.target_count) <= rep.bound + kBoundTolerance;

    KGraph level(KGraph::canonical, g.n(), l, clique_sets(g, l));
    for (int k = l; k <= m; ++k) {
        const Count c = level.size();
        rep.chain.push_back(c == 0 ? k - 1.0 : solve_x(c, k));
        // every higher level is empty once one is
        if (k == m || c == 0) break;
        // (k+1)-sets spanning K^k_{k+1} in the clique graph are exactly K^r_{k+1} copies of G.
        level = KGraph(KGraph::canonical, g.n(), k + 1, clique_sets(level, k + 1));
    }
    for (std::size_t i = 1; i < rep.chain.size(); ++i) {
        if (rep.chain[i] > rep.chain[i - 1] + kBoundTolerance) rep.chain_monotone = false;
    }
    return rep;
}

/// K^r_{r+1}(v): number of (r+1)-cliques through each vertex.
inline std::vector<Count> vertex_clique_counts(const KGraph& g) {
    std::vector<Count> per(static_cast<std::size_t>(g.n()), 0);
    for (Mask c : clique_sets(g, g.r() + 1))
        for (Mask m = c; m != 0; m &= m - 1) ++per[static_cast<std::size_t>(std::countr_zero(m))];
    return per;
}

/// Per-vertex estimates from the inductive proof of the Lovasz bound.
struct VertexBoundReport {
    bool handshake = false;         ///< (r+1) K^r_{r+1}(G) = sum_v K^r_{r+1}(v)
    bool degree_bound = true;       ///< K(v) <= (x/r - 1) d(v) for every v
    bool complement_bound = true;   ///< K(v) <= |G| - d(v) for every v
    bool equality_degrees = false;  ///< every non-isolated vertex has degree binom(x-1, r-1)
};

inline VertexBoundReport vertex_bounds(const KGraph& g) {
    VertexBoundReport rep;
    if (g.empty() || g.r() < 1) {
        rep.handshake = true;
        return rep;
    }
    const double x = solve_x(static_cast<Count>(g.size()), g.r());
    const auto per = vertex_clique_counts(g);
    const auto deg = g.degrees();
    Count sum = 0;
    rep.equality_degrees = true;
    const double target = gbinom(x - 1, g.r() - 1);
    for (std::size_t v = 0; v < per.size(); ++v) {
        sum += per[v];
        const double kv = static_cast<double>(per[v]);
        if (kv > (x / g.r() - 1.0) * static_cast<double>(deg[v]) + kBoundTolerance) rep.degree_bound = false;
        if (per[v] + deg[v] > g.size()) rep.complement_bound = false;
        if (deg[v] != 0 && std::abs(static_cast<double>(deg[v]) - target) > kBoundTolerance) rep.equality_degrees = false;
    }
    rep.handshake = sum == static_cast<Count>(g.r() + 1) * count_cliques(g, g.r() + 1);
    return rep;
}

/// For each edge count m, the largest K^r_{r+1}(G) over all r-graphs on n
/// vertices with m edges (exhaustive).
inline std::map<Count, Count> extremal_clique_table(int n, int r) {
    std::map<Count, Count> best;
    for_each_rgraph(n, r, [&](const KGraph& g) {
        const Count c = g.empty() ? 0 : count_cliques(g, r + 1);
        auto [it, inserted] = best.try_emplace(g.size(), c);
        if (!inserted && c > it->second) it->second = c;
    });
    return best;
}

}  // namespace shadowkit
