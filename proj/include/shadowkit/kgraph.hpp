#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shadowkit/common.hpp"

namespace shadowkit {

/// An r-uniform hypergraph on vertices 0..n-1.
///
/// Edges are stored as bitmasks in increasing numeric order, which for a
/// fixed popcount is exactly the colex order. Values are immutable once
/// built; every operation below returns a new graph.
class KGraph {
public:
    struct canonical_t {};
    /// Tag for callers that already hold sorted, duplicate-free, valid edges.
    static constexpr canonical_t canonical{};

    KGraph() = default;

    /// Validates and canonicalizes. Throws std::invalid_argument on an edge of
    /// the wrong size, a vertex outside [0, n), or a duplicate edge.
    KGraph(int n, int r, std::vector<Mask> edges) : n_(n), r_(r), edges_(std::move(edges)) {
        if (n < 0 || n > kMaxVertices) throw domain_error("vertex count must lie in [0, 64]");
        if (r < 0 || r > n) throw domain_error("uniformity must lie in [0, n]");
        const Mask allowed = universe(n);
        for (Mask e : edges_) {
            if (popcount(e) != r) throw std::invalid_argument("edge size != r");
            if ((e & ~allowed) != 0) throw std::invalid_argument("vertex out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("duplicate edge");
    }

    KGraph(canonical_t, int n, int r, std::vector<Mask> edges) : n_(n), r_(r), edges_(std::move(edges)) {}

    /// Sorts and removes duplicates; no other validation.
    static KGraph from_unsorted(int n, int r, std::vector<Mask> edges) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return KGraph(canonical, n, r, std::move(edges));
    }

    int n() const { return n_; }
    int r() const { return r_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    std::span<const Mask> edges() const { return edges_; }

    bool has_edge(Mask e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

    int degree(int v) const {
        int d = 0;
        for (Mask e : edges_) d += contains(e, v) ? 1 : 0;
        return d;
    }

    std::vector<Count> degrees() const {
        std::vector<Count> d(static_cast<std::size_t>(n_), 0);
        for (Mask e : edges_)
            for (Mask m = e; m != 0; m &= m - 1) ++d[static_cast<std::size_t>(std::countr_zero(m))];
        return d;
    }

    /// Union of all edges: the vertices of nonzero degree.
    Mask support() const {
        Mask s = 0;
        for (Mask e : edges_) s |= e;
        return s;
    }

    friend bool operator==(const KGraph&, const KGraph&) = default;

private:
    int n_ = 0;
    int r_ = 0;
    std::vector<Mask> edges_;
};

/// The complete r-graph on vertices 0..n-1.
inline KGraph complete_graph(int n, int r) { return KGraph(KGraph::canonical, n, r, all_subsets(n, r)); }

/// The complete r-graph on the vertex set `vertices`, inside a universe of n.
inline KGraph complete_on(Mask vertices, int n, int r) {
    std::vector<Mask> edges;
    for_each_subset(vertices, r, [&](Mask e) { edges.push_back(e); });
    return KGraph::from_unsorted(n, r, std::move(edges));
}

/// All (r-1)-subsets of edges.
inline KGraph shadow(const KGraph& g) {
    if (g.r() == 0) throw domain_error("shadow of 0-graph undefined");
    std::vector<Mask> out;
    out.reserve(g.size() * static_cast<std::size_t>(g.r()));
    for (Mask e : g.edges())
        for (Mask m = e; m != 0; m &= m - 1) out.push_back(e & ~(m & (~m + 1)));
    return KGraph::from_unsorted(g.n(), g.r() - 1, std::move(out));
}

/// All s-subsets of edges, enumerated directly from each edge.
inline KGraph s_shadow(const KGraph& g, int s) {
    if (s < 0 || s > g.r()) throw domain_error("s-shadow requires 0 <= s <= r");
    if (s == g.r()) return g;
    std::vector<Mask> out;
    for (Mask e : g.edges()) for_each_subset(e, s, [&](Mask sub) { out.push_back(sub); });
    return KGraph::from_unsorted(g.n(), s, std::move(out));
}

/// The m-sets all of whose r-subsets are edges, in colex order.
///
/// Grows k-cliques to (k+1)-cliques: a (k+1)-set with k >= r is a clique iff
/// each of its k-subsets is; each candidate is generated once from the
/// k-subset obtained by dropping its largest element.
inline std::vector<Mask> clique_sets(const KGraph& g, int m) {
    if (m < g.r()) throw domain_error("clique order m must be at least r");
    std::vector<Mask> level(g.edges().begin(), g.edges().end());
    for (int k = g.r(); k < m && !level.empty(); ++k) {
        std::vector<Mask> next;
        for (Mask c : level) {
            const int start = c == 0 ? 0 : highest_bit(c) + 1;
            for (int v = start; v < g.n(); ++v) {
                const Mask cand = c | bit(v);
                bool ok = true;
                for (Mask rest = c; rest != 0 && ok; rest &= rest - 1)
                    ok = std::binary_search(level.begin(), level.end(), cand & ~(rest & (~rest + 1)));
                if (ok) next.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return level;
}

/// K^r_m(G): number of m-sets spanning a complete r-graph in G.
inline Count count_cliques(const KGraph& g, int m) {
    if (m < g.r()) throw domain_error("clique order m must be at least r");
    if (m == g.r()) return g.size();
    return clique_sets(g, m).size();
}

/// The (r-1)-graph {A : A + v in G, v not in A}.
inline KGraph link(const KGraph& g, int v) {
    if (v < 0 || v >= g.n()) throw domain_error("vertex out of range");
    if (g.r() == 0) throw domain_error("link of 0-graph undefined");
    std::vector<Mask> out;
    for (Mask e : g.edges())
        if (contains(e, v)) out.push_back(e & ~bit(v));
    return KGraph(KGraph::canonical, g.n(), g.r() - 1, std::move(out));
}

/// Edges avoiding v. The vertex universe is unchanged; v becomes isolated.
inline KGraph delete_vertex(const KGraph& g, int v) {
    if (v < 0 || v >= g.n()) throw domain_error("vertex out of range");
    std::vector<Mask> out;
    for (Mask e : g.edges())
        if (!contains(e, v)) out.push_back(e);
    return KGraph(KGraph::canonical, g.n(), g.r(), std::move(out));
}

/// {A - v : v in A in G}, an (r-1)-graph on the same universe.
inline KGraph contract_vertex(const KGraph& g, int v) {
    if (g.r() == 0) throw domain_error("contraction of 0-graph undefined");
    return link(g, v);
}

/// Unique greedy representation m = sum binom(top_i, order_i) with strictly
/// decreasing tops and top_j >= order_j >= 1.
struct CascadeTerm {
    Count top = 0;
    int order = 0;
    friend bool operator==(const CascadeTerm&, const CascadeTerm&) = default;
};

struct Cascade {
    std::vector<CascadeTerm> terms;

    Count value() const {
        Count total = 0;
        for (const auto& t : terms) total += binomial(static_cast<long long>(t.top), t.order);
        return total;
    }
    friend bool operator==(const Cascade&, const Cascade&) = default;
};

/// Largest t >= 0 with binomial(t, k) <= m (k >= 1).
inline Count largest_top(Count m, int k) {
    Count lo = static_cast<Count>(k) - 1, hi = static_cast<Count>(k);
    auto fits = [&](Count t) {
        try {
            return binomial(static_cast<long long>(t), k) <= m;
        } catch (const std::overflow_error&) {
            return false;
        }
    };
    while (fits(hi)) {
        lo = hi;
        hi = hi * 2;
    }
    while (hi - lo > 1) {
        const Count mid = lo + (hi - lo) / 2;
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

inline Cascade cascade(Count m, int r) {
    if (r < 1) throw domain_error("cascade requires r >= 1");
    Cascade c;
    for (int i = r; i >= 1 && m > 0; --i) {
        const Count top = largest_top(m, i);
        c.terms.push_back({top, i});
        m -= binomial(static_cast<long long>(top), i);
    }
    return c;
}

/// The first m r-sets of the natural numbers in colex order. The vertex
/// universe is truncated to the largest element used (at least r).
inline KGraph colex_segment(int r, Count m) {
    if (r < 0) throw domain_error("colex segment requires r >= 0");
    if (r == 0) {
        if (m > 1) throw domain_error("only one 0-set exists");
        return KGraph(KGraph::canonical, 0, 0, m == 1 ? std::vector<Mask>{0} : std::vector<Mask>{});
    }
    std::vector<Mask> edges;
    edges.reserve(static_cast<std::size_t>(m));
    Mask cur = universe(r);
    for (Count i = 0; i < m; ++i) {
        if (cur == 0) throw domain_error("colex segment leaves the 64-vertex universe");
        edges.push_back(cur);
        cur = next_combination(cur);
    }
    const int n = edges.empty() ? r : std::max(r, highest_bit(edges.back()) + 1);
    return KGraph(KGraph::canonical, n, r, std::move(edges));
}

/// The Kruskal-Katona minimum size of the s-shadow of m r-sets:
/// sum over cascade terms of binomial(top_i, order_i - r + s).
inline Count kk_exact_shadow_bound(Count m, int r, int s) {
    if (s < 0 || s > r) throw domain_error("kk bound requires 0 <= s <= r");
    if (m == 0) return 0;
    Count total = 0;
    for (const auto& t : cascade(m, r).terms) total += binomial(static_cast<long long>(t.top), t.order - r + s);
    return total;
}

/// Enumerates every r-graph on n vertices (2^binom(n,r) of them).
template <class F>
void for_each_rgraph(int n, int r, F&& f) {
    const std::vector<Mask> all = all_subsets(n, r);
    if (all.size() >= 40) throw domain_error("exhaustive enumeration too large");
    const std::uint64_t total = std::uint64_t{1} << all.size();
    std::vector<Mask> edges;
    for (std::uint64_t pick = 0; pick < total; ++pick) {
        edges.clear();
        for (std::uint64_t p = pick; p != 0; p &= p - 1) edges.push_back(all[static_cast<std::size_t>(std::countr_zero(p))]);
        f(KGraph(KGraph::canonical, n, r, edges));
    }
}

}  // namespace shadowkit
