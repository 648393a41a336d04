#pragma once

#include <algorithm>
#include <bitset>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "shadowkit/gbinom.hpp"
#include "shadowkit/kgraph.hpp"

namespace shadowkit {

inline bool is_intersecting(const KGraph& g) {
    const auto e = g.edges();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if ((e[i] & e[j]) == 0) return false;
    return true;
}

/// Vertex lying in every edge, lowest index first; nullopt if none or empty.
inline std::optional<int> common_vertex(const KGraph& g) {
    if (g.empty()) return std::nullopt;
    Mask all = universe(g.n());
    for (Mask e : g.edges()) all &= e;
    if (all == 0) return std::nullopt;
    return std::countr_zero(all);
}

struct EKRReport {
    int n = 0;
    int r = 0;
    Count size = 0;
    Count bound = 0;  ///< binom(n-1, r-1)
    bool trivial_regime = false;  ///< n < 2r: every family is intersecting
    bool satisfied = false;
    bool equality = false;
    std::optional<int> center;
    /// At equality with n > 2r, a common vertex exists.
    bool uniqueness_ok = true;
};

inline EKRReport ekr_check(const KGraph& g) {
    if (!is_intersecting(g)) throw precondition_error("ekr_check requires an intersecting family");
    EKRReport rep;
    rep.n = g.n();
    rep.r = g.r();
    rep.size = g.size();
    rep.center = common_vertex(g);
    if (g.n() < 2 * g.r()) {
        rep.trivial_regime = true;
        rep.bound = binomial(g.n(), g.r());
        rep.satisfied = true;
        return rep;
    }
    rep.bound = g.r() == 0 ? 1 : binomial(g.n() - 1, g.r() - 1);
    rep.satisfied = rep.size <= rep.bound;
    rep.equality = rep.size == rep.bound;
    if (rep.equality && g.n() > 2 * g.r()) rep.uniqueness_ok = rep.center.has_value();
    return rep;
}

/// H: the r-sets missing from G. J: complements of edges of G, an (n-r)-graph.
struct ComplementPair {
    KGraph H;
    KGraph J;
};

inline ComplementPair complement_pair(const KGraph& g) {
    std::vector<Mask> h;
    for (Mask a : all_subsets(g.n(), g.r()))
        if (!g.has_edge(a)) h.push_back(a);
    std::vector<Mask> j;
    const Mask all = universe(g.n());
    for (Mask e : g.edges()) j.push_back(all & ~e);
    return {KGraph(KGraph::canonical, g.n(), g.r(), std::move(h)),
            KGraph::from_unsorted(g.n(), g.n() - g.r(), std::move(j))};
}

struct ComplementCliqueReport {
    bool intersecting = false;
    bool all_span = false;  ///< every member of J spans a complete r-graph in H
    bool equivalent = false;
    Count J_size = 0;
    /// K^r_{n-r}(H); only defined when n - r >= r.
    std::optional<Count> clique_count;
    bool clique_bound = true;  ///< K^r_{n-r}(H) >= |J| when G is intersecting
};

/// G is intersecting iff every complement of an edge spans K^r_{n-r} in H.
inline ComplementCliqueReport intersecting_iff_cliques(const KGraph& g) {
    if (g.r() >= g.n()) throw domain_error("complement construction requires r < n");
    ComplementCliqueReport rep;
    const auto [H, J] = complement_pair(g);
    rep.intersecting = is_intersecting(g);
    rep.J_size = J.size();
    rep.all_span = true;
    for (Mask b : J.edges()) {
        bool spans = true;
        for_each_subset(b, g.r(), [&](Mask a) { spans = spans && H.has_edge(a); });
        if (!spans) {
            rep.all_span = false;
            break;
        }
    }
    rep.equivalent = rep.intersecting == rep.all_span;
    if (g.n() - g.r() >= g.r()) {
        rep.clique_count = count_cliques(H, g.n() - g.r());
        if (rep.intersecting) rep.clique_bound = *rep.clique_count >= rep.J_size;
    }
    return rep;
}

struct EKRCertificate {
    int n = 0;
    int r = 0;
    int v = 0;
    Count covered = 0;
    Count uncovered = 0;
    double delta = 0.0;
    double bound_intstab1 = 0.0;  ///< 25 n sqrt(delta) binom(n-1, r-1)
    double bound_intstab2 = 0.0;  ///< delta r binom(n-1, r-1)
    bool hyp_intstab1 = false;    ///< delta < 1e-3 n^-4
    bool hyp_intstab2 = false;    ///< delta < 1/(2 r n^4)
    bool concl_intstab1 = false;
    bool concl_intstab2 = false;
    /// A conclusion failed where its hypothesis holds.
    bool violated() const { return (hyp_intstab1 && !concl_intstab1) || (hyp_intstab2 && !concl_intstab2); }
};

/// Best center (most edges through it, lowest index on ties) and the two
/// stability bounds evaluated at the instance's deficiency. As with the
/// shadow stability statements, the bounds are checked in limiting
/// (non-strict) form at the true delta.
inline EKRCertificate stability_certificate(const KGraph& g) {
    if (!(1 <= g.r() && 2 * g.r() < g.n())) throw domain_error("EKR regime requires r < n/2");
    if (!is_intersecting(g)) throw precondition_error("stability certificate requires an intersecting family");
    EKRCertificate c;
    c.n = g.n();
    c.r = g.r();
    const auto deg = g.degrees();
    c.v = static_cast<int>(std::max_element(deg.begin(), deg.end()) - deg.begin());
    c.covered = deg[static_cast<std::size_t>(c.v)];
    c.uncovered = g.size() - c.covered;
    const double full = static_cast<double>(binomial(g.n() - 1, g.r() - 1));
    c.delta = std::max(0.0, 1.0 - static_cast<double>(g.size()) / full);
    const double n4 = std::pow(static_cast<double>(g.n()), 4);
    c.bound_intstab1 = 25.0 * g.n() * std::sqrt(c.delta) * full;
    c.bound_intstab2 = c.delta * g.r() * full;
    c.hyp_intstab1 = c.delta < 1e-3 / n4;
    c.hyp_intstab2 = c.delta < 1.0 / (2.0 * g.r() * n4);
    c.concl_intstab1 = static_cast<double>(c.uncovered) <= c.bound_intstab1 + 1e-9;
    c.concl_intstab2 = static_cast<double>(c.uncovered) <= c.bound_intstab2 + 1e-9;
    return c;
}

/// Outcome of the exhaustive search for intersecting families of size
/// binom(n-1, r-1) that contain the set {0, ..., r-1}.
struct MaxIntersectingSearch {
    int n = 0;
    int r = 0;
    Count target = 0;
    Count families = 0;   ///< families of size >= target found
    Count stars = 0;      ///< of which have a common vertex
    Count oversize = 0;   ///< of size > target (would contradict the bound)
    Count nodes = 0;      ///< search nodes visited
    bool all_stars() const { return families == stars && oversize == 0; }
};

namespace detail {

using SetBits = std::bitset<256>;

/// Max intersecting subfamily size for every subset of a small group of r-sets.
struct BoundGroup {
    std::vector<int> ids;
    std::vector<std::uint8_t> best;
};

inline BoundGroup make_group(std::vector<int> ids, const std::vector<Mask>& sets) {
    BoundGroup g;
    g.ids = std::move(ids);
    const std::size_t k = g.ids.size();
    const std::size_t full = std::size_t{1} << k;
    std::vector<std::uint8_t> ok(full, 1);
    g.best.assign(full, 0);
    for (std::size_t s = 1; s < full; ++s) {
        const std::size_t low = static_cast<std::size_t>(std::countr_zero(s));
        const std::size_t rest = s & (s - 1);
        bool good = ok[rest] != 0;
        for (std::size_t t = rest; t != 0 && good; t &= t - 1) {
            const std::size_t j = static_cast<std::size_t>(std::countr_zero(t));
            good = (sets[static_cast<std::size_t>(g.ids[low])] & sets[static_cast<std::size_t>(g.ids[j])]) != 0;
        }
        ok[s] = good ? 1 : 0;
        std::uint8_t b = good ? static_cast<std::uint8_t>(std::popcount(s)) : 0;
        for (std::size_t t = s; t != 0; t &= t - 1) b = std::max(b, g.best[s & ~(t & (~t + 1))]);
        g.best[s] = b;
    }
    return g;
}

/// Greedy packing of r-sets into disjoint interval classes of random cyclic
/// orders; uncovered sets become singleton groups.
inline std::vector<BoundGroup> interval_partition(int n, int r, const std::vector<Mask>& sets, std::uint64_t seed) {
    std::vector<int> index_of_rank(sets.size());
    std::vector<char> used(sets.size(), 0);
    std::vector<BoundGroup> groups;
    std::mt19937_64 rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    auto find = [&](Mask m) { return static_cast<int>(std::lower_bound(sets.begin(), sets.end(), m) - sets.begin()); };
    const int attempts = 20000;
    for (int a = 0; a < attempts; ++a) {
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> ids;
        bool fresh = true;
        for (int x = 0; x < n && fresh; ++x) {
            Mask m = 0;
            for (int k = 0; k < r; ++k) m |= bit(perm[static_cast<std::size_t>((x + k) % n)]);
            const int id = find(m);
            fresh = !used[static_cast<std::size_t>(id)];
            ids.push_back(id);
        }
        if (!fresh) continue;
        for (int id : ids) used[static_cast<std::size_t>(id)] = 1;
        groups.push_back(make_group(std::move(ids), sets));
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (!used[i]) groups.push_back(make_group({static_cast<int>(i)}, sets));
    return groups;
}

/// True iff the group bound on p falls below `need`; stops summing once reached.
inline bool group_bound_below(const std::vector<BoundGroup>& groups, const SetBits& p, int need) {
    int total = 0;
    for (const auto& g : groups) {
        std::size_t sub = 0;
        for (std::size_t i = 0; i < g.ids.size(); ++i)
            if (p[static_cast<std::size_t>(g.ids[i])]) sub |= std::size_t{1} << i;
        total += g.best[sub];
        if (total >= need) return false;
    }
    return true;
}

}  // namespace detail

/// Enumerates every intersecting r-family on n points of size at least
/// binom(n-1, r-1) containing {0..r-1}, by branch and bound. Transitivity of
/// the symmetric group on r-sets makes this cover all maximum families up to
/// relabeling. The bound sums, over a partition of the candidates into
/// cyclic-order interval classes, the exact maximum intersecting subfamily
/// of each class (computed by brute force per class).
inline MaxIntersectingSearch search_max_intersecting(int n, int r, std::uint64_t seed = 0) {
    if (!(1 <= r && 2 * r < n)) throw domain_error("EKR regime requires 1 <= r < n/2");
    const std::vector<Mask> sets = all_subsets(n, r);
    if (sets.size() > 256) throw domain_error("exhaustive intersecting search capped at 256 r-sets");
    MaxIntersectingSearch out;
    out.n = n;
    out.r = r;
    out.target = binomial(n - 1, r - 1);
    const std::size_t total = sets.size();

    std::vector<detail::SetBits> meets(total);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (i != j && (sets[i] & sets[j]) != 0) meets[i].set(j);

    std::vector<std::vector<detail::BoundGroup>> partitions;
    for (std::uint64_t k = 0; k < 4; ++k) partitions.push_back(detail::interval_partition(n, r, sets, seed + k));
    auto prune = [&](const detail::SetBits& p, int need) {
        if (static_cast<int>(p.count()) < need) return true;
        for (const auto& groups : partitions)
            if (detail::group_bound_below(groups, p, need)) return true;
        return false;
    };
    const int target = static_cast<int>(out.target);

    // sets[0] is {0..r-1}; candidates are the sets meeting it.
    std::vector<Mask> chosen{sets[0]};
    auto record = [&]() {
        ++out.families;
        if (static_cast<int>(chosen.size()) > target) ++out.oversize;
        Mask all = universe(n);
        for (Mask m : chosen) all &= m;
        if (all != 0) ++out.stars;
    };

    auto expand = [&](auto&& self, detail::SetBits p) -> void {
        ++out.nodes;
        const int have = static_cast<int>(chosen.size());
        if (have >= target) record();
        for (std::size_t c = p._Find_first(); c < total; c = p._Find_next(c)) {
            if (prune(p, target - have)) return;
            detail::SetBits next = p & meets[c];
            // only later candidates, so each family is generated once
            for (std::size_t j = next._Find_first(); j <= c && j < total; j = next._Find_next(j)) next.reset(j);
            chosen.push_back(sets[c]);
            self(self, next);
            chosen.pop_back();
            p.reset(c);
        }
    };
    expand(expand, meets[0]);
    return out;
}

}  // namespace shadowkit
