#pragma once

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shadowkit/verify.hpp"

namespace shadowkit {

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace cli_detail {

using nlohmann::json;

/// Result of one subcommand; any failed invariant makes the exit status 1.
struct Outcome {
    json result = json::object();
    bool pass = true;
    std::vector<std::string> failed;
    /// Printed verbatim instead of the key/value rendering in human mode.
    std::string human;

    void require(bool ok, const std::string& invariant) {
        if (!ok) {
            pass = false;
            failed.push_back(invariant);
        }
    }
};

inline void render_human(const json& j, const std::string& prefix, std::ostream& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) render_human(*it, key, out);
        else out << key << ": " << it->dump() << "\n";
    }
}

inline json lemma_json(const LemmaCheckResult& r) {
    json j{{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"satisfied", r.satisfied},
           {"hypotheses_met", r.hypotheses_met}, {"margin", r.margin}};
    if (r.middle) j["middle"] = *r.middle;
    return j;
}

inline json kk_json(const KKReport& r) {
    json j{{"x", r.x},           {"count", r.count},       {"bound", r.bound},
           {"satisfied", r.satisfied}, {"equality", r.equality}, {"complete_on_support", r.complete_on_support},
           {"cross_check", r.cross_check}};
    return j;
}

inline Outcome cmd_shadow(const KGraph& g, int s, bool with_doc) {
    Outcome o;
    if (s < 0) s = g.r() - 1;
    const KGraph sh = s_shadow(g, s);
    const Count minimum = g.empty() ? 0 : kk_exact_shadow_bound(g.size(), g.r(), s);
    o.result = {{"n", g.n()}, {"r", g.r()}, {"s", s}, {"edges", g.size()}, {"shadow_size", sh.size()},
                {"kk_minimum", minimum}};
    if (with_doc) o.result["shadow"] = to_json(sh);
    o.require(sh.size() >= minimum, "s-shadow at least the Kruskal-Katona minimum");
    return o;
}

inline Outcome cmd_cliques(const KGraph& g, int m) {
    Outcome o;
    o.result = {{"m", m}, {"count", count_cliques(g, m)}};
    return o;
}

inline Outcome cmd_kk_check(const KGraph& g) {
    Outcome o;
    const KKReport lv = lovasz_check(g);
    const KKReport sh = shadow_check(g);
    o.result["clique_bound"] = kk_json(lv);
    o.result["shadow_bound"] = kk_json(sh);
    o.require(lv.satisfied, "clique count at most binom(x, r+1)");
    o.require(sh.satisfied && sh.cross_check, "shadow at least binom(x, r-1)");
    for (int s = 0; s < g.r(); ++s) {
        const KKReport it = iterated_shadow_check(g, s);
        o.result["iterated_shadow"][std::to_string(s)] = kk_json(it);
        o.require(it.satisfied, "s-shadow at least binom(x, s) for s = " + std::to_string(s));
    }
    const VertexBoundReport vb = vertex_bounds(g);
    o.result["vertex_bounds"] = {{"handshake", vb.handshake},
                                 {"degree_bound", vb.degree_bound},
                                 {"complement_bound", vb.complement_bound}};
    o.require(vb.handshake && vb.degree_bound && vb.complement_bound, "per-vertex clique bounds");
    return o;
}

inline Outcome cmd_stability(const KGraph& g, double epsilon) {
    Outcome o;
    const StabilityReport rep = extract_stability(g, epsilon);
    o.result = {{"x", rep.x},
                {"delta", rep.delta},
                {"epsilon", rep.epsilon},
                {"hypotheses_met", rep.hypotheses_met},
                {"C", members(rep.C)},
                {"S", members(rep.S)},
                {"A0", members(rep.classes.A0)},
                {"B0", members(rep.classes.B0)},
                {"exceptional_edges", rep.exceptional_edges},
                {"bound_s1", rep.bound_s1},
                {"H0", rep.H0_size},
                {"H1", rep.H1_size},
                {"flags", {{"s1", rep.flags.s1}, {"s2", rep.flags.s2}, {"s3", rep.flags.s3}, {"s4", rep.flags.s4}}}};
    if (rep.hypotheses_met) {
        o.require(rep.flags.s1, "statement (1): edges outside S");
        o.require(rep.flags.s2, "statement (2): high-degree vertices");
        o.require(rep.flags.s3, "statement (3): low-degree incidences");
        o.require(rep.flags.s4, "statement (4): dense core");
    }
    return o;
}

inline Outcome cmd_ekr_cert(const KGraph& g) {
    Outcome o;
    const EKRReport ek = ekr_check(g);
    const EKRCertificate c = stability_certificate(g);
    o.result = {{"size", ek.size},
                {"bound", ek.bound},
                {"equality", ek.equality},
                {"v", c.v},
                {"covered", c.covered},
                {"uncovered", c.uncovered},
                {"delta", c.delta},
                {"bound_intstab1", c.bound_intstab1},
                {"bound_intstab2", c.bound_intstab2},
                {"hyp_intstab1", c.hyp_intstab1},
                {"hyp_intstab2", c.hyp_intstab2},
                {"concl_intstab1", c.concl_intstab1},
                {"concl_intstab2", c.concl_intstab2}};
    o.require(ek.satisfied && ek.uniqueness_ok, "intersecting family bound");
    o.require(!(c.hyp_intstab1 && !c.concl_intstab1), "near-star certificate (sqrt bound)");
    o.require(!(c.hyp_intstab2 && !c.concl_intstab2), "near-star certificate (linear bound)");
    return o;
}

inline Outcome cmd_cyclic_audit(const KGraph& g) {
    Outcome o;
    const IdentityReport id = katona_identity_check(g);
    o.result["identity"] = {{"lhs", id.lhs}, {"rhs", id.rhs}, {"orders", id.orders}, {"holds", id.holds}};
    o.require(id.holds, "cyclic counting identity");
    if (is_intersecting(g) && g.r() >= 1 && 2 * g.r() < g.n() && g.n() <= kClaimCap) {
        const ClaimReport cl = transposition_claim_check(g);
        o.result["claim"] = {{"complete_orders", cl.complete_orders},
                             {"pairs_checked", cl.pairs_checked},
                             {"counterexamples", cl.counterexamples},
                             {"incomplete_bound", cl.incomplete_bound}};
        o.require(cl.holds, "transposition claim");
        o.require(cl.incomplete_bound, "incomplete-order count bound");
        const ComponentReport cc = complete_component(g);
        o.result["component"] = {{"largest", cc.largest},
                                 {"components", cc.components},
                                 {"single_center", cc.single_center},
                                 {"component_bound", cc.component_bound},
                                 {"strong_component_bound", cc.strong_component_bound},
                                 {"center_degree_bound", cc.center_degree_bound}};
        if (cc.center) o.result["component"]["center"] = *cc.center;
        o.require(cc.complete_count_bound, "complete-order count bound");
        o.require(cc.component_bound, "largest complete component bound");
        if (cc.hypothesis) o.require(cc.single_center && cc.center_degree_bound, "centered component");
    }
    return o;
}

inline Outcome cmd_cayley_gap(int n, int trials, std::uint64_t seed) {
    Outcome o;
    const CayleyGraph c(n);
    const EigenResult e = second_eigenvalue(c, 1e-12, 200000, seed);
    const double residual = (c.degree() - e.lambda2) - bacher_gap(n);
    o.result = {{"n", n},
                {"vertices", c.size()},
                {"degree", c.degree()},
                {"lambda2", e.lambda2},
                {"bacher_gap", bacher_gap(n)},
                {"residual", residual},
                {"iterations", e.iterations}};
    o.require(e.converged, "eigensolver converged");
    o.require(std::abs(residual) < 1e-9, "spectral gap matches closed form");
    if (trials > 0) {
        const ExpansionReport x = expansion_check(c, trials, seed);
        o.result["expansion"] = {{"samples", x.samples}, {"failures", x.failures}, {"min_ratio", x.min_ratio}};
        o.require(x.holds(), "sampled expansion |N(W)| >= |W|/n^3");
    }
    return o;
}

inline Outcome cmd_rank(const KGraph& g, int s, std::uint64_t seed) {
    Outcome o;
    const RankResult rk = rank_exact(inclusion_matrix(g, s), seed);
    o.result = {{"s", s},
                {"rank", rk.rank},
                {"rows", g.size()},
                {"columns", binomial(g.n(), s)},
                {"method", rk.method == RankMethod::fraction_free_int128 ? "fraction-free/int128" : "fraction-free/bigint"},
                {"prime", rk.prime},
                {"modular_rank", rk.modular_rank}};
    o.human = std::to_string(rk.rank) + "\n";
    return o;
}

inline Outcome cmd_rank_probe(int r, int s, int n, Count lo, Count hi, int samples, std::uint64_t seed) {
    Outcome o;
    const ProbeReport p = kk_alg_probe(r, s, lo, hi, n, samples, seed);
    json rows = json::array();
    std::ostringstream h;
    h << "edges instances violations equalities min_slack\n";
    for (const auto& row : p.rows) {
        rows.push_back({{"edges", row.edges},
                        {"instances", row.instances},
                        {"violations", row.violations},
                        {"equalities", row.equalities},
                        {"min_slack", row.min_slack}});
        h << row.edges << " " << row.instances << " " << row.violations << " " << row.equalities << " "
          << row.min_slack << "\n";
    }
    o.result = {{"r", r}, {"s", s}, {"n", n}, {"exhaustive", p.exhaustive}, {"rows", rows}};
    if (p.onset) o.result["onset"] = *p.onset;
    h << "onset: " << (p.onset ? std::to_string(*p.onset) : std::string("none")) << "\n";
    o.human = h.str();
    return o;
}

inline SuiteResult cli_suite(Level, std::uint64_t seed) {
    Checker c("cli");
    c.covers({"parse_hypergraph", "run_command"});
    std::ostringstream out, err;
    const int code = run_command({"gen", "cycle", "--n", "4", "--seed", std::to_string(seed)}, out, err);
    c.check(code == 0, "gen exits 0");
    const KGraph g = parse_hypergraph(out.str());
    c.check(g.size() == 4 && serialize(g) + "\n" == out.str(), "document round trip");
    try {
        parse_hypergraph(R"({"n":3,"r":2,"edges":[[0,1,2]]})");
        c.check(false, "wrong edge size rejected");
    } catch (const parse_error&) {
        c.check(true, "wrong edge size rejected");
    }
    std::ostringstream o2, e2;
    c.check(run_command({"no-such-command"}, o2, e2) == 2, "unknown subcommand exits 2");
    return std::move(c).result();
}

inline Outcome cmd_verify(Level level, std::uint64_t seed, std::ostream& progress) {
    Outcome o;
    std::vector<Suite> all = module_suites();
    all.push_back({"cli", cli_suite});
    std::sort(all.begin(), all.end(), [](const Suite& a, const Suite& b) { return a.name < b.name; });
    std::set<std::string> covered;
    std::ostringstream h;
    for (const Suite& s : all) {
        const auto t0 = std::chrono::steady_clock::now();
        const SuiteResult r = s.run(level, seed);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        covered.insert(r.covered.begin(), r.covered.end());
        o.result["suites"][r.name] = {{"checks", r.checks}, {"failures", r.failures}};
        progress << std::left << std::setw(10) << r.name << std::right << std::setw(9) << r.checks << " checks  "
                 << (r.passed() ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(2) << secs << "s\n";
        for (const auto& f : r.failures) progress << "    failed: " << f << "\n";
        o.require(r.passed(), "suite " + r.name);
    }
    json manifest = json::object();
    bool complete = true;
    for (const auto& [module, ops] : operation_manifest())
        for (const auto& op : ops) {
            const bool hit = covered.count(op) != 0;
            manifest[module][op] = hit;
            complete = complete && hit;
        }
    o.result["coverage"] = manifest;
    o.require(complete, "coverage manifest complete");
    h << "coverage: " << (complete ? "all operations exercised" : "INCOMPLETE") << "\n";
    o.human = h.str();
    return o;
}

inline Level parse_level(const std::string& s) {
    if (s == "smoke") return Level::smoke;
    if (s == "deep") return Level::deep;
    return Level::desk;
}

}  // namespace cli_detail

/// Runs one subcommand. Exit status: 0 all checks passed, 1 a check failed
/// (named on err), 2 usage or input error.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"Exact toolkit for shadows, intersecting families and inclusion matrices", "shadowkit"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t seed = 0;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", seed, "seed for all randomness");

    std::string file;
    int s = -1, m = 0, n = 0, r = 0, trials = 1000, samples = 200, v = 0;
    double epsilon = 0.25;
    Count lo = 1, hi = 1000, size = 0, removed = 0, foreign = 0;
    std::string level = "desk", family;

    auto with_file = [&](CLI::App* sub) { sub->add_option("file", file, "hypergraph document")->required(); };
    auto* sh = app.add_subcommand("shadow", "s-shadow size (default s = r-1)");
    with_file(sh);
    sh->add_option("--s", s, "shadow level");
    auto* cq = app.add_subcommand("cliques", "count m-sets spanning complete r-graphs");
    with_file(cq);
    cq->add_option("--m", m, "clique order")->required();
    auto* kk = app.add_subcommand("kk-check", "clique and shadow bounds in terms of x");
    with_file(kk);
    auto* st = app.add_subcommand("stability", "near-extremal structure extraction");
    with_file(st);
    st->add_option("--epsilon", epsilon, "epsilon in (0, 1/2)");
    auto* ek = app.add_subcommand("ekr-cert", "intersecting-family bound and near-star certificate");
    with_file(ek);
    auto* cy = app.add_subcommand("cyclic-audit", "cyclic-order identity, claim and component analysis");
    with_file(cy);
    auto* cg = app.add_subcommand("cayley-gap", "spectral gap of the adjacent-transposition Cayley graph");
    cg->add_option("--n", n, "ground set size")->required();
    cg->add_option("--trials", trials, "random expansion samples (0 to skip)");
    auto* rk = app.add_subcommand("rank", "exact rank of the inclusion matrix M^r_s(G)");
    with_file(rk);
    rk->add_option("--s", s, "column set size")->required();
    auto* rp = app.add_subcommand("rank-probe", "inclusion rank against binom(x, s) over many graphs");
    rp->add_option("--r", r, "uniformity")->required();
    rp->add_option("--s", s, "column set size")->required();
    rp->add_option("--n", n, "vertices")->required();
    rp->add_option("--lo", lo, "smallest edge count");
    rp->add_option("--hi", hi, "largest edge count");
    rp->add_option("--samples", samples, "samples per size when not exhaustive");
    auto* vs = app.add_subcommand("verify-suite", "run every property suite");
    vs->add_option("--level", level, "smoke, desk or deep")->check(CLI::IsMember({"smoke", "desk", "deep"}));
    auto* gn = app.add_subcommand("gen", "emit a generated hypergraph document");
    gn->add_option("family", family, "complete, colex, star, star-perturbed, cycle, random")
        ->required()
        ->check(CLI::IsMember({"complete", "colex", "star", "star-perturbed", "cycle", "random"}));
    gn->add_option("--n", n, "vertices")->required();
    gn->add_option("--r", r, "uniformity");
    gn->add_option("--m", size, "edge count (colex, random)");
    gn->add_option("--v", v, "center (star, star-perturbed)");
    gn->add_option("--removed", removed, "edges removed (complete, star-perturbed)");
    gn->add_option("--foreign", foreign, "foreign edges (star-perturbed)");
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Outcome o;
    std::string command;
    try {
        auto graph = [&] { return load_document(file).graph; };
        if (*gn) {
            KGraph g;
            if (family == "complete") g = gen_complete(n, r, removed, seed);
            else if (family == "colex") g = gen_colex(n, r, size);
            else if (family == "star") g = gen_star(n, r, v);
            else if (family == "star-perturbed") g = gen_star_perturbed(n, r, v, removed, foreign, seed);
            else if (family == "cycle") g = gen_cycle(n, r == 0 ? 2 : r);
            else g = gen_random(n, r, size, seed);
            out << serialize(g) << "\n";
            return 0;
        }
        for (CLI::App* sub : app.get_subcommands()) command = sub->get_name();
        if (*sh) o = cmd_shadow(graph(), s, as_json);
        else if (*cq) o = cmd_cliques(graph(), m);
        else if (*kk) o = cmd_kk_check(graph());
        else if (*st) o = cmd_stability(graph(), epsilon);
        else if (*ek) o = cmd_ekr_cert(graph());
        else if (*cy) o = cmd_cyclic_audit(graph());
        else if (*cg) o = cmd_cayley_gap(n, trials, seed);
        else if (*rk) o = cmd_rank(graph(), s, seed);
        else if (*rp) o = cmd_rank_probe(r, s, n, lo, hi, samples, seed);
        else if (*vs) o = cmd_verify(parse_level(level), seed, as_json ? err : out);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }

    if (as_json) {
        json report{{"command", command}, {"args", args}, {"result", o.result}, {"pass", o.pass},
                    {"failed", o.failed}};
        out << report.dump(2) << "\n";
    } else {
        if (!o.human.empty()) out << o.human;
        else render_human(o.result, "", out);
        if (command != "rank") out << "status: " << (o.pass ? "PASS" : "FAIL") << "\n";
    }
    for (const auto& f : o.failed) err << "failed: " << f << "\n";
    return o.pass ? 0 : 1;
}

}  // namespace shadowkit
