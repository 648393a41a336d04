#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "shadowkit/gbinom.hpp"
#include "shadowkit/kgraph.hpp"
#include "shadowkit/kkbound.hpp"

namespace shadowkit {

/// Degree classes of the stability construction, as vertex masks.
struct DegreeClasses {
    Mask A = 0;   ///< d(v) > binom(x-1, r-1)
    Mask A0 = 0;  ///< d(v) > (1 + sqrt(delta)) binom(x-1, r-1)
    Mask B = 0;   ///< complement of A
    Mask B0 = 0;  ///< d(v) < binom(x-1-y, r-1), y = sqrt(delta)(x-r)
    double y = 0.0;
    bool delta_clamped = false;
};

inline DegreeClasses classify_degrees(const KGraph& g, double x, double delta) {
    if (g.r() < 1) throw domain_error("degree classes require r >= 1");
    if (x < g.r()) throw domain_error("degree classes require x >= r");
    DegreeClasses dc;
    if (delta < 0.0) {
        delta = 0.0;
        dc.delta_clamped = true;
    }
    const int r = g.r();
    const double root = std::sqrt(delta);
    dc.y = root * (x - r);
    const double mid = gbinom(x - 1, r - 1);
    const double high = (1.0 + root) * mid;
    const double low = gbinom(x - 1 - dc.y, r - 1);
    const auto deg = g.degrees();
    for (int v = 0; v < g.n(); ++v) {
        const double d = static_cast<double>(deg[static_cast<std::size_t>(v)]);
        if (d > mid) dc.A |= bit(v);
        if (d > high) dc.A0 |= bit(v);
        if (d < low) dc.B0 |= bit(v);
    }
    dc.B = universe(g.n()) & ~dc.A;
    return dc;
}

/// The (r+1)-graph whose edges are the K^r_{r+1} copies in G.
inline KGraph clique_hypergraph(const KGraph& g) {
    if (g.r() + 1 > g.n()) return KGraph(KGraph::canonical, g.n(), g.n(), {});
    return KGraph(KGraph::canonical, g.n(), g.r() + 1, clique_sets(g, g.r() + 1));
}

struct StabilityFlags {
    bool s1 = false;  ///< edges outside S within 10r(1/eps+1) sqrt(delta) binom(x,r)
    bool s2 = false;  ///< |A0| <= sqrt(delta) x
    bool s3 = false;  ///< low-degree vertices meet <= sqrt(delta) x binom(x-1,r-1) edges
    bool s4 = false;  ///< |C| <= (1+3r sqrt(delta)) x and |H0| >= binom((1-4 sqrt(delta)) x, r+1)
    bool all() const { return s1 && s2 && s3 && s4; }
};

struct StabilityReport {
    int n = 0;
    int r = 0;
    Count edges = 0;
    Count cliques = 0;
    double x = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double y = 0.0;
    DegreeClasses classes;
    Mask C = 0;
    Mask S = 0;
    Count H_size = 0;
    Count H0_size = 0;
    Count H1_size = 0;
    Count edges_in_C = 0;
    Count exceptional_edges = 0;
    Count d_B0 = 0;
    Count low_degree_incidences = 0;
    double bound_s1 = 0.0;
    double bound_s2 = 0.0;
    double bound_s3 = 0.0;
    double bound_s4_size = 0.0;
    double bound_s4_cliques = 0.0;
    /// The polynomial value of binom((1-4 sqrt(delta)) x, r+1); differs from
    /// bound_s4_cliques only when the argument is below r.
    double bound_s4_cliques_poly = 0.0;
    /// 0 < eps < 1/2, r >= 2, x >= (1+eps)(r+1), delta < (eps/6r)^2.
    bool hypotheses_met = false;
    StabilityFlags flags;

    /// Proof-internal estimates, meaningful under the hypotheses.
    bool a0_small = false;       ///< |A0| < sqrt(delta)(x-r), non-strict at the true delta
    bool dB0_small = false;      ///< d_B0 <= sqrt(delta) r binom(x, r)
    bool h1_small = false;       ///< |H1| <= 3 sqrt(delta)(r+1) binom(x, r+1)
    bool c_dense = false;        ///< edges in C >= binom((1-4 sqrt(delta)) x, r)
};

/// Runs the stability construction on G.
///
/// delta is the instance's own deficiency 1 - K^r_{r+1}(G)/binom(x, r+1).
/// The statements hold for every larger admissible delta, so at the true
/// deficiency they are evaluated in their limiting (non-strict) form.
/// Lower bounds of the form binom(y, k) use the monotone branch (0 for
/// y < k-1); under the hypotheses y stays above k-1 and nothing changes.
inline StabilityReport extract_stability(const KGraph& g, double epsilon = 0.25) {
    if (g.r() < 1) throw domain_error("stability requires r >= 1");
    const int r = g.r();
    const KGraph H = clique_hypergraph(g);
    if (H.empty()) throw domain_error("no cliques: stability undefined");

    StabilityReport rep;
    rep.n = g.n();
    rep.r = r;
    rep.edges = g.size();
    rep.cliques = H.size();
    rep.epsilon = epsilon;
    rep.x = solve_x(static_cast<Count>(g.size()), r);
    const double x = rep.x;
    const double full = gbinom(x, r + 1);
    rep.delta = std::max(0.0, 1.0 - static_cast<double>(H.size()) / full);
    const double root = std::sqrt(rep.delta);
    rep.hypotheses_met = epsilon > 0.0 && epsilon < 0.5 && r >= 2 && x >= (1.0 + epsilon) * (r + 1) &&
                         rep.delta < std::pow(epsilon / (6.0 * r), 2);

    rep.classes = classify_degrees(g, x, rep.delta);
    rep.y = rep.classes.y;
    rep.C = universe(g.n()) & ~(rep.classes.A0 | rep.classes.B0);

    rep.H_size = H.size();
    for (Mask h : H.edges()) rep.H0_size += (h & ~rep.C) == 0 ? 1 : 0;
    rep.H1_size = rep.H_size - rep.H0_size;

    const auto deg = g.degrees();
    for (int v = 0; v < g.n(); ++v)
        if (contains(rep.classes.B0, v)) rep.d_B0 += deg[static_cast<std::size_t>(v)];

    // S of size ceil(x): a subset of C keeping highest degrees, or a superset
    // of C adding the lowest-index outside vertices.
    const int target = static_cast<int>(std::ceil(x - 1e-12));
    const int c_size = popcount(rep.C);
    if (c_size >= target) {
        std::vector<int> vs = members(rep.C);
        std::stable_sort(vs.begin(), vs.end(), [&](int a, int b) {
            return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)];
        });
        for (int i = 0; i < target; ++i) rep.S |= bit(vs[static_cast<std::size_t>(i)]);
    } else {
        rep.S = rep.C;
        for (int v = 0; v < g.n() && popcount(rep.S) < target; ++v) rep.S |= bit(v);
    }

    for (Mask e : g.edges()) {
        if ((e & ~rep.S) != 0) ++rep.exceptional_edges;
        if ((e & ~rep.C) == 0) ++rep.edges_in_C;
    }

    // statement (3): vertices of degree below binom((1-sqrt(delta))(x-1), r-1)
    const double low = gbinom_monotone((1.0 - root) * (x - 1.0), r - 1);
    Mask low_set = 0;
    for (int v = 0; v < g.n(); ++v)
        if (static_cast<double>(deg[static_cast<std::size_t>(v)]) < low) low_set |= bit(v);
    for (Mask e : g.edges()) rep.low_degree_incidences += (e & low_set) != 0 ? 1 : 0;

    const double tol = kBoundTolerance;
    const double br = gbinom(x, r);
    rep.bound_s1 = 10.0 * r * (1.0 / epsilon + 1.0) * root * br;
    rep.bound_s2 = root * x;
    rep.bound_s3 = root * x * gbinom(x - 1, r - 1);
    rep.bound_s4_size = (1.0 + 3.0 * r * root) * x;
    rep.bound_s4_cliques = gbinom_monotone((1.0 - 4.0 * root) * x, r + 1);
    rep.bound_s4_cliques_poly = gbinom((1.0 - 4.0 * root) * x, r + 1);

    rep.flags.s1 = static_cast<double>(rep.exceptional_edges) <= rep.bound_s1 + tol;
    rep.flags.s2 = popcount(rep.classes.A0) <= rep.bound_s2 + tol;
    rep.flags.s3 = static_cast<double>(rep.low_degree_incidences) <= rep.bound_s3 + tol;
    rep.flags.s4 = popcount(rep.C) <= rep.bound_s4_size + tol &&
                   static_cast<double>(rep.H0_size) + tol >= rep.bound_s4_cliques;

    rep.a0_small = popcount(rep.classes.A0) <= root * (x - r) + tol;
    rep.dB0_small = static_cast<double>(rep.d_B0) <= root * r * br + tol;
    rep.h1_small = static_cast<double>(rep.H1_size) <= 3.0 * root * (r + 1) * full + tol;
    rep.c_dense = static_cast<double>(rep.edges_in_C) + tol >= gbinom_monotone((1.0 - 4.0 * root) * x, r);
    return rep;
}

}  // namespace shadowkit
