#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "shadowkit/ekr.hpp"
#include "shadowkit/kgraph.hpp"

namespace shadowkit {

/// A cyclic order of 0..n-1, represented by the rotation with perm.back() == n-1.
/// Dropping the last entry is a bijection onto the permutations of 0..n-2.
struct CyclicOrder {
    std::vector<int> perm;

    int n() const { return static_cast<int>(perm.size()); }
    friend bool operator==(const CyclicOrder&, const CyclicOrder&) = default;
};

/// Rotates any arrangement of 0..n-1 into canonical form.
inline CyclicOrder canonicalize(std::vector<int> seq) {
    const int n = static_cast<int>(seq.size());
    if (n == 0) return {};
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
        if (sorted[static_cast<std::size_t>(i)] != i) throw std::invalid_argument("not a permutation of 0..n-1");
    const auto last = std::find(seq.begin(), seq.end(), n - 1);
    std::rotate(seq.begin(), last + 1, seq.end());
    return {std::move(seq)};
}

inline CyclicOrder identity_order(int n) {
    CyclicOrder s;
    s.perm.resize(static_cast<std::size_t>(n));
    std::iota(s.perm.begin(), s.perm.end(), 0);
    return s;
}

/// Visits all (n-1)! cyclic orders, in lexicographic order of perm.
template <class F>
void for_each_cyclic_order(int n, F&& f) {
    if (n < 1) return;
    CyclicOrder s = identity_order(n);
    do {
        f(static_cast<const CyclicOrder&>(s));
    } while (std::next_permutation(s.perm.begin(), s.perm.end() - 1));
}

struct Interval {
    int start = 0;  ///< position of the first element
    Mask set = 0;
};

/// The n intervals of length r: positions start .. start+r-1 (mod n).
inline std::vector<Interval> intervals(const CyclicOrder& s, int r) {
    const int n = s.n();
    if (r < 1 || r > n) throw domain_error("interval length must lie in [1, n]");
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        Mask m = 0;
        for (int k = 0; k < r; ++k) m |= bit(s.perm[static_cast<std::size_t>((x + k) % n)]);
        out.push_back({x, m});
    }
    return out;
}

struct Restriction {
    std::vector<Mask> members;  ///< G(sigma): edges of G that are intervals, as distinct sets
    bool complete = false;      ///< |G(sigma)| == r
    std::optional<int> center;  ///< common vertex of G(sigma) when complete
};

inline Restriction restrict(const KGraph& g, const CyclicOrder& s) {
    if (s.n() != g.n()) throw domain_error("cyclic order and graph disagree on n");
    Restriction res;
    if (g.r() < 1) return res;
    for (const auto& iv : intervals(s, g.r()))
        if (g.has_edge(iv.set)) res.members.push_back(iv.set);
    std::sort(res.members.begin(), res.members.end());
    res.members.erase(std::unique(res.members.begin(), res.members.end()), res.members.end());
    res.complete = static_cast<int>(res.members.size()) == g.r();
    if (res.complete) {
        Mask all = universe(g.n());
        for (Mask m : res.members) all &= m;
        if (all != 0) res.center = std::countr_zero(all);
    }
    return res;
}

namespace detail {

/// Number of interval positions x with I(x) in G (multiplicity counts for r = n).
inline Count interval_hits(const KGraph& g, const CyclicOrder& s) {
    Count c = 0;
    for (const auto& iv : intervals(s, g.r())) c += g.has_edge(iv.set) ? 1 : 0;
    return c;
}

}  // namespace detail

inline constexpr int kIdentityCap = 10;
inline constexpr int kClaimCap = 8;

struct IdentityReport {
    Count lhs = 0;  ///< r! (n-r)! |G|
    Count rhs = 0;  ///< sum over cyclic orders of |G(sigma)|
    Count orders = 0;
    Count complete_orders = 0;
    bool holds = false;
};

/// r!(n-r)!|G| = sum_sigma |G(sigma)|, both sides exact. For r = n the
/// single interval set is counted once per position.
inline IdentityReport katona_identity_check(const KGraph& g) {
    if (g.n() > kIdentityCap) throw domain_error("exhaustive identity check infeasible");
    if (g.r() < 1) throw domain_error("identity check requires r >= 1");
    IdentityReport rep;
    rep.lhs = factorial(g.r()) * factorial(g.n() - g.r()) * static_cast<Count>(g.size());
    for_each_cyclic_order(g.n(), [&](const CyclicOrder& s) {
        const Count hits = detail::interval_hits(g, s);
        rep.rhs += hits;
        ++rep.orders;
        if (hits == static_cast<Count>(g.r()) && g.r() < g.n()) ++rep.complete_orders;
    });
    rep.holds = rep.lhs == rep.rhs;
    return rep;
}

struct IntervalFamilyReport {
    int max_size = 0;
    std::vector<Mask> witness;
    Count maximum_families = 0;
    /// Every maximum family is the set of all r intervals through one point.
    bool equality_characterized = false;
    bool bound_holds = false;  ///< max_size <= r
};

/// Brute force over all subsets of the n intervals.
inline IntervalFamilyReport max_interval_family(const CyclicOrder& s, int r) {
    const int n = s.n();
    if (!(1 <= r && 2 * r < n)) throw domain_error("interval family bound requires 1 <= r < n/2");
    const auto ivs = intervals(s, r);
    std::vector<Mask> sets;
    for (const auto& iv : ivs) sets.push_back(iv.set);
    IntervalFamilyReport rep;
    rep.equality_characterized = true;
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::uint64_t> max_families;
    for (std::uint64_t pick = 1; pick < total; ++pick) {
        bool ok = true;
        for (std::uint64_t a = pick; a != 0 && ok; a &= a - 1) {
            const int i = std::countr_zero(a);
            for (std::uint64_t b = a & (a - 1); b != 0 && ok; b &= b - 1)
                ok = (sets[static_cast<std::size_t>(i)] & sets[static_cast<std::size_t>(std::countr_zero(b))]) != 0;
        }
        if (!ok) continue;
        const int size = std::popcount(pick);
        if (size > rep.max_size) {
            rep.max_size = size;
            max_families.clear();
        }
        if (size == rep.max_size) max_families.push_back(pick);
    }
    rep.bound_holds = rep.max_size <= r;
    rep.maximum_families = max_families.size();
    for (std::uint64_t fam : max_families) {
        Mask common = universe(n);
        for (std::uint64_t a = fam; a != 0; a &= a - 1) common &= sets[static_cast<std::size_t>(std::countr_zero(a))];
        bool through_point = false;
        for (Mask c = common; c != 0 && !through_point; c &= c - 1) {
            const int x = std::countr_zero(c);
            int through = 0;
            for (Mask m : sets) through += contains(m, x) ? 1 : 0;
            through_point = through == rep.max_size;
        }
        if (!through_point) rep.equality_characterized = false;
    }
    if (!max_families.empty())
        for (std::uint64_t a = max_families.front(); a != 0; a &= a - 1)
            rep.witness.push_back(sets[static_cast<std::size_t>(std::countr_zero(a))]);
    return rep;
}

struct ClaimReport {
    Count orders = 0;
    Count complete_orders = 0;
    Count incomplete_orders = 0;
    Count pairs_checked = 0;   ///< (sigma, i) with sigma v-complete, tau complete, i admissible
    Count pairs_excluded = 0;  ///< swaps touching the position of v
    Count counterexamples = 0;
    bool holds = false;
    /// Every complete order has a center (interval family characterization).
    bool centers_exist = true;
    /// |X| <= r(n-1)! - r!(n-r)!|G|, exact.
    bool incomplete_bound = false;
};

/// For every v-complete sigma and every cyclic position i such that neither
/// position i nor i+1 holds v, if tau = sigma with those positions swapped is
/// complete then tau is v-complete.
inline ClaimReport transposition_claim_check(const KGraph& g) {
    if (g.n() > kClaimCap) throw domain_error("exhaustive transposition check infeasible");
    if (!(1 <= g.r() && 2 * g.r() < g.n())) throw precondition_error("transposition claim requires 1 <= r < n/2");
    if (!is_intersecting(g)) throw precondition_error("transposition claim requires an intersecting family");
    const int n = g.n();
    ClaimReport rep;
    for_each_cyclic_order(n, [&](const CyclicOrder& s) {
        ++rep.orders;
        const Restriction rs = restrict(g, s);
        if (!rs.complete) {
            ++rep.incomplete_orders;
            return;
        }
        ++rep.complete_orders;
        if (!rs.center) {
            rep.centers_exist = false;
            return;
        }
        const int v = *rs.center;
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            if (s.perm[static_cast<std::size_t>(i)] == v || s.perm[static_cast<std::size_t>(j)] == v) {
                ++rep.pairs_excluded;
                continue;
            }
            std::vector<int> t = s.perm;
            std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
            const Restriction rt = restrict(g, canonicalize(std::move(t)));
            if (!rt.complete) continue;
            ++rep.pairs_checked;
            if (rt.center != v) ++rep.counterexamples;
        }
    });
    rep.holds = rep.counterexamples == 0 && rep.centers_exist;
    const Count total = static_cast<Count>(g.r()) * factorial(n - 1);
    const Count used = factorial(g.r()) * factorial(n - g.r()) * static_cast<Count>(g.size());
    rep.incomplete_bound = used <= total && rep.incomplete_orders <= total - used;
    return rep;
}

}  // namespace shadowkit
