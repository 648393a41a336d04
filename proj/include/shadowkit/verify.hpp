#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "shadowkit/cayley.hpp"
#include "shadowkit/cyclic.hpp"
#include "shadowkit/ekr.hpp"
#include "shadowkit/gbinom.hpp"
#include "shadowkit/generators.hpp"
#include "shadowkit/incmat.hpp"
#include "shadowkit/io.hpp"
#include "shadowkit/kgraph.hpp"
#include "shadowkit/kkbound.hpp"
#include "shadowkit/kkstab.hpp"

namespace shadowkit {

enum class Level { smoke, desk, deep };

/// Every operation a full verify run must touch, grouped by module.
inline const std::map<std::string, std::vector<std::string>>& operation_manifest() {
    static const std::map<std::string, std::vector<std::string>> ops = {
        {"cayley", {"build_cayley", "second_eigenvalue", "expansion_check", "complete_component"}},
        {"cli", {"parse_hypergraph", "run_command"}},
        {"core",
         {"shadow", "s_shadow", "count_cliques", "link", "delete", "colex_segment", "cascade",
          "kk_exact_shadow_bound"}},
        {"cyclic",
         {"intervals", "restrict", "katona_identity_check", "max_interval_family", "transposition_claim_check"}},
        {"ekr",
         {"is_intersecting", "ekr_check", "complement_pair", "intersecting_iff_cliques", "stability_certificate"}},
        {"gbinom",
         {"gbinom", "solve_x", "gbinom_derivative", "check_vandermonde", "check_facts", "check_bin_diff",
          "check_bin_shadow"}},
        {"incmat",
         {"inclusion_matrix", "rank_exact", "gottlieb_check", "inclusion_identity_check", "rank_recursion_check",
          "full_rank_robustness", "kk_alg_probe"}},
        {"kkbound", {"lovasz_check", "shadow_check", "iterated_shadow_check", "chained_clique_check"}},
        {"kkstab", {"classify_degrees", "clique_hypergraph", "extract_stability"}},
    };
    return ops;
}

struct SuiteResult {
    std::string name;
    Count checks = 0;
    std::vector<std::string> failures;
    std::set<std::string> covered;
    bool passed() const { return failures.empty(); }
};

/// Accumulates named checks for one suite.
class Checker {
public:
    explicit Checker(std::string name) { res_.name = std::move(name); }

    void check(bool ok, const std::string& what) {
        ++res_.checks;
        if (!ok && res_.failures.size() < 50) res_.failures.push_back(what);
    }
    void covers(std::initializer_list<const char*> ops) {
        for (const char* op : ops) res_.covered.insert(op);
    }
    SuiteResult result() && { return std::move(res_); }

private:
    SuiteResult res_;
};

struct Suite {
    std::string name;
    std::function<SuiteResult(Level, std::uint64_t)> run;
};

namespace suites {

inline SuiteResult core(Level level, std::uint64_t seed) {
    Checker c("core");
    c.covers({"shadow", "s_shadow", "count_cliques", "link", "delete", "colex_segment", "cascade",
              "kk_exact_shadow_bound"});
    const int max_n = level == Level::smoke ? 5 : (level == Level::desk ? 7 : 8);
    std::mt19937_64 rng(seed);
    for (int n = 3; n <= max_n; ++n) {
        for (int r = 1; r <= std::min(n, 4); ++r) {
            const Count total = binomial(n, r);
            for (int t = 0; t < 20; ++t) {
                const Count m = std::uniform_int_distribution<Count>(1, total)(rng);
                const KGraph g = gen_random(n, r, m, rng());
                for (int s = 0; s <= r; ++s) {
                    const Count got = s_shadow(g, s).size();
                    c.check(got >= kk_exact_shadow_bound(m, r, s), "s-shadow below Kruskal-Katona minimum");
                }
                if (r >= 1) c.check(shadow(g) == s_shadow(g, r - 1), "shadow disagrees with (r-1)-shadow");
                const int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                c.check(link(g, v).size() + delete_vertex(g, v).size() == g.size(), "link + deletion != |G|");
                c.check(count_cliques(g, r) == g.size(), "K^r_r(G) != |G|");
            }
        }
    }
    for (int r = 1; r <= 4; ++r)
        for (Count m = 1; m <= (level == Level::smoke ? 40u : 200u); ++m) {
            if (m > binomial(kMaxVertices, r)) break;
            const Cascade cas = cascade(m, r);
            c.check(cas.value() == m, "cascade does not represent m");
            const KGraph seg = colex_segment(r, m);
            for (int s = 0; s <= r; ++s)
                c.check(s_shadow(seg, s).size() == kk_exact_shadow_bound(m, r, s), "colex segment not extremal");
        }
    c.check(count_cliques(gen_complete(5, 2, 0), 3) == 10, "K_5 triangles");
    return std::move(c).result();
}

inline SuiteResult gbinom_suite(Level level, std::uint64_t seed) {
    Checker c("gbinom");
    c.covers({"gbinom", "solve_x", "gbinom_derivative", "check_vandermonde", "check_facts", "check_bin_diff",
              "check_bin_shadow"});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int trials = level == Level::smoke ? 100 : 1000;
    for (int t = 0; t < trials; ++t) {
        const int r = 1 + static_cast<int>(rng() % 6);
        const double x = -5.0 + 20.0 * unit(rng);
        const double y = -5.0 + 20.0 * unit(rng);
        c.check(check_vandermonde(x, y, r).satisfied, "vandermonde identity");
        const double h = 1e-5;
        const double fd = (gbinom(x + h, r) - gbinom(x - h, r)) / (2 * h);
        const double d = gbinom_derivative(x, r);
        c.check(std::abs(fd - d) <= 1e-5 * std::max(1.0, std::abs(d)), "derivative vs finite difference");
        const double m = 1.0 + 1000.0 * unit(rng);
        const double root = solve_x(m, r);
        c.check(std::abs(gbinom(root, r) - m) <= 1e-9 * m && root >= r - 1, "solve_x root");
        if (r >= 2) {
            const double lo = r - 1 + 10.0 * unit(rng);
            const double hi = lo + 0.01 + 5.0 * unit(rng);
            c.check(check_bin_diff(hi, lo, r).satisfied, "bin-diff strict inequalities");
        }
        const double u = r + 2.0 + 15.0 * unit(rng);
        if (r >= 2) {
            const double w = (r - 1) + (u - r) * unit(rng) * 0.5;
            try {
                const double v = complete_triple(u, w, r);
                c.check(check_bin_shadow(u, v, w, r, r - 1, BinShadowMode::lemma_3_2).name == "bin-shadow",
                        "bin-shadow evaluation");
                c.check(std::abs(transformed_defect(u, v, w, r)) <= 1e-8 * std::max(1.0, gbinom(u, r)),
                        "change-of-variables residual");
            } catch (const precondition_error&) {
            }
        }
    }
    c.check(check_facts(Fact::f1, {.theta = 0.5, .x = 10.0, .n = 3}).satisfied, "fact f1");
    c.check(check_facts(Fact::f2, {.a = 10.0, .b = 8.0, .n = 3}).satisfied, "fact f2");
    c.check(check_facts(Fact::f3, {.theta = 0.1, .n = 3}).satisfied, "fact f3");
    c.check(check_facts(Fact::f4, {.theta = 0.1, .n = 3}).satisfied, "fact f4");
    c.check(check_facts(Fact::f5, {.theta = 0.3, .n = 3}).satisfied, "fact f5");
    c.check(std::abs(solve_x(Count{4}, 2) - (1.0 + std::sqrt(33.0)) / 2.0) < 1e-12, "solve_x(4,2)");
    return std::move(c).result();
}

inline SuiteResult kkbound_suite(Level level, std::uint64_t seed) {
    Checker c("kkbound");
    c.covers({"lovasz_check", "shadow_check", "iterated_shadow_check", "chained_clique_check"});
    auto all_checks = [&](const KGraph& g) {
        const KKReport lv = lovasz_check(g);
        c.check(lv.satisfied, "clique bound");
        const bool complete_integral = !g.empty() && lv.complete_on_support && integral_root(g.size(), g.r());
        c.check(lv.equality == complete_integral, "clique bound equality characterization");
        const KKReport sh = shadow_check(g);
        c.check(sh.satisfied && sh.cross_check, "shadow bound");
        for (int s = 0; s < g.r(); ++s) c.check(iterated_shadow_check(g, s).satisfied, "iterated shadow bound");
    };
    const int n2 = level == Level::smoke ? 5 : (level == Level::desk ? 6 : 7);
    const int n3 = level == Level::smoke ? 4 : (level == Level::desk ? 5 : 6);
    for (int n = 2; n <= n2; ++n) for_each_rgraph(n, 2, all_checks);
    for (int n = 3; n <= n3; ++n) for_each_rgraph(n, 3, all_checks);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 50; ++t) {
        const KGraph g = gen_random(7, 2, 1 + rng() % 21, rng());
        const ChainedCliqueReport ch = chained_clique_check(g, 2, 4);
        c.check(ch.satisfied && ch.chain_monotone, "chained clique bound");
    }
    return std::move(c).result();
}

inline SuiteResult kkstab_suite(Level level, std::uint64_t seed) {
    Checker c("kkstab");
    c.covers({"classify_degrees", "clique_hypergraph", "extract_stability"});
    std::mt19937_64 rng(seed);
    const int max_n = level == Level::smoke ? 6 : 8;
    for (int r = 2; r <= 3; ++r)
        for (int n = r + 2; n <= max_n; ++n)
            for (Count k = 0; k <= 3; ++k) {
                const KGraph g = gen_complete(n, r, k, rng());
                const KGraph h = clique_hypergraph(g);
                c.check(h.size() == count_cliques(g, r + 1), "clique hypergraph size");
                if (h.empty()) continue;
                const StabilityReport rep = extract_stability(g);
                c.check(rep.flags.all(), "stability statements on near-complete graph");
                const DegreeClasses dc = classify_degrees(g, rep.x, -1.0);
                c.check(dc.delta_clamped, "negative delta clamped");
            }
    return std::move(c).result();
}

inline SuiteResult ekr_suite(Level level, std::uint64_t seed) {
    Checker c("ekr");
    c.covers({"is_intersecting", "ekr_check", "complement_pair", "intersecting_iff_cliques",
              "stability_certificate"});
    std::mt19937_64 rng(seed);
    const int max_n = level == Level::smoke ? 7 : (level == Level::desk ? 8 : 9);
    for (int n = 5; n <= max_n; ++n)
        for (int r = 1; 2 * r < n; ++r) {
            const MaxIntersectingSearch s = search_max_intersecting(n, r, seed);
            c.check(s.all_stars() && s.families == static_cast<Count>(r), "maximum intersecting families are stars");
        }
    for (int t = 0; t < 40; ++t) {
        const int n = 5 + static_cast<int>(rng() % 4);
        const int r = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>((n - 3) / 2));
        const KGraph g = gen_star_perturbed(n, r, 0, rng() % 3, rng() % 2, rng());
        c.check(is_intersecting(g), "star perturbation intersecting");
        c.check(ekr_check(g).satisfied, "EKR bound");
        const auto pair = complement_pair(g);
        c.check(pair.H.size() + g.size() == binomial(n, r) && pair.J.size() == g.size(), "complement sizes");
        const auto iff = intersecting_iff_cliques(g);
        c.check(iff.equivalent && iff.clique_bound, "intersecting iff complements span cliques");
        c.check(!stability_certificate(g).violated(), "stability certificate");
    }
    return std::move(c).result();
}

inline SuiteResult cyclic_suite(Level level, std::uint64_t seed) {
    Checker c("cyclic");
    c.covers({"intervals", "restrict", "katona_identity_check", "max_interval_family", "transposition_claim_check"});
    std::mt19937_64 rng(seed);
    const int max_n = level == Level::smoke ? 5 : 7;
    for (int n = 2; n <= max_n; ++n)
        for (int r = 1; r <= n; ++r)
            for (Mask e : all_subsets(n, r))
                c.check(katona_identity_check(KGraph(KGraph::canonical, n, r, {e})).holds, "counting identity");
    for (int n = 3; n <= max_n; ++n)
        for (int r = 1; 2 * r < n; ++r) {
            const IntervalFamilyReport rep = max_interval_family(identity_order(n), r);
            c.check(rep.max_size == r && rep.equality_characterized, "interval family maximum");
            for (int t = 0; t < 3; ++t) {
                const int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                const KGraph g = r == 1 ? gen_star(n, r, v) : gen_star_perturbed(n, r, v, rng() % 3, rng() % 2, rng());
                const ClaimReport cl = transposition_claim_check(g);
                c.check(cl.holds && cl.incomplete_bound, "transposition claim");
                const Restriction res = restrict(g, identity_order(n));
                c.check(!res.complete || res.center.has_value(), "complete order has a center");
            }
        }
    return std::move(c).result();
}

inline SuiteResult cayley_suite(Level level, std::uint64_t seed) {
    Checker c("cayley");
    c.covers({"build_cayley", "second_eigenvalue", "expansion_check", "complete_component"});
    const int max_n = level == Level::smoke ? 5 : 7;
    for (int n = 3; n <= max_n; ++n) {
        const CayleyGraph g(n);
        const EigenResult e = second_eigenvalue(g);
        c.check(e.converged && std::abs((g.degree() - e.lambda2) - bacher_gap(n)) < 1e-9, "spectral gap formula");
        const ExpansionReport x = expansion_check(g, level == Level::smoke ? 500 : 10000, seed + n);
        c.check(x.holds() && x.alpha_exceeds, "expansion");
    }
    for (int n = 5; n <= (level == Level::smoke ? 6 : 7); ++n) {
        const ComponentReport rep = complete_component(gen_star(n, 2, 0));
        c.check(rep.single_center && rep.largest == rep.orders, "full star: one centered component");
    }
    return std::move(c).result();
}

inline SuiteResult incmat_suite(Level level, std::uint64_t seed) {
    Checker c("incmat");
    c.covers({"inclusion_matrix", "rank_exact", "gottlieb_check", "inclusion_identity_check",
              "rank_recursion_check", "full_rank_robustness", "kk_alg_probe"});
    const int max_n = level == Level::smoke ? 6 : 9;
    for (int n = 0; n <= max_n; ++n)
        for (int r = 0; r <= n; ++r)
            for (int s = 0; s <= r; ++s) c.check(gottlieb_check(n, r, s).holds, "Gottlieb rank formula");
    std::mt19937_64 rng(seed);
    const int trials = level == Level::smoke ? 50 : 300;
    for (int t = 0; t < trials; ++t) {
        const int n = 4 + static_cast<int>(rng() % 4);
        const int r = 2 + static_cast<int>(rng() % 2);
        const KGraph g = gen_random(n, r, 1 + rng() % binomial(n, r), rng());
        const InclusionMatrix m = inclusion_matrix(g, 1);
        const RankResult rk = rank_exact(m, rng());
        c.check(rk.rank <= m.nonzero_columns(), "rank <= nonzero columns");
        for (int u = 1; u <= r; ++u) c.check(inclusion_identity_check(g, u).holds, "inclusion identity");
        for (int s = 1; s < r; ++s) {
            const RecursionReport rr = rank_recursion_check(g, static_cast<int>(rng() % static_cast<std::uint64_t>(n)), s);
            c.check(rr.inequality && rr.block_form && rr.reduced_block_form, "rank recursion");
        }
    }
    for (int t = 0; t < 30; ++t) {
        const Count size = rigidity_admissible_size(7, 3, 1);
        const KGraph f = gen_random(7, 3, size, rng());
        c.check(full_rank_robustness(7, 3, 1, f).holds(), "rigidity under size hypothesis");
    }
    const ProbeReport probe = kk_alg_probe(2, 1, 1, 15, level == Level::smoke ? 5 : 6);
    c.check(!probe.rows.empty(), "probe produced rows");
    return std::move(c).result();
}

}  // namespace suites

inline std::vector<Suite> module_suites() {
    return {
        {"cayley", suites::cayley_suite}, {"core", suites::core},       {"cyclic", suites::cyclic_suite},
        {"ekr", suites::ekr_suite},       {"gbinom", suites::gbinom_suite}, {"incmat", suites::incmat_suite},
        {"kkbound", suites::kkbound_suite}, {"kkstab", suites::kkstab_suite},
    };
}

}  // namespace shadowkit
