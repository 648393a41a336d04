#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "shadowkit/gbinom.hpp"
#include "shadowkit/kgraph.hpp"
#include "shadowkit/rank.hpp"

namespace shadowkit {

/// M^r_s(G): rows are the edges of G in colex order, columns all s-subsets
/// of 0..n-1 in colex order; entry (e, S) is 1 iff S is contained in e.
/// Stored sparsely: each row lists its binom(r, s) column indices, ascending.
class InclusionMatrix {
public:
    InclusionMatrix(const KGraph& g, int s) : n_(g.n()), r_(g.r()), s_(s) {
        if (s < 0 || s > g.r()) throw domain_error("inclusion matrix requires 0 <= s <= r");
        cols_ = binomial(n_, s);
        rows_.reserve(g.size());
        row_sets_.assign(g.edges().begin(), g.edges().end());
        for (Mask e : g.edges()) {
            std::vector<std::size_t> row;
            for_each_subset(e, s, [&](Mask sub) { row.push_back(static_cast<std::size_t>(colex_rank(sub))); });
            std::sort(row.begin(), row.end());
            rows_.push_back(std::move(row));
        }
    }

    int n() const { return n_; }
    int r() const { return r_; }
    int s() const { return s_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return static_cast<std::size_t>(cols_); }
    const std::vector<std::size_t>& row(std::size_t i) const { return rows_[i]; }
    Mask row_set(std::size_t i) const { return row_sets_[i]; }

    int entry(std::size_t i, std::size_t j) const {
        return std::binary_search(rows_[i].begin(), rows_[i].end(), j) ? 1 : 0;
    }

    /// Number of columns with at least one nonzero entry (= |s-shadow|).
    std::size_t nonzero_columns() const {
        std::vector<std::size_t> all;
        for (const auto& r : rows_) all.insert(all.end(), r.begin(), r.end());
        std::sort(all.begin(), all.end());
        return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
    }

    IntMatrix dense() const {
        IntMatrix m(rows(), cols());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j : rows_[i]) m(i, j) = 1;
        return m;
    }

private:
    int n_;
    int r_;
    int s_;
    Count cols_ = 0;
    std::vector<std::vector<std::size_t>> rows_;
    std::vector<Mask> row_sets_;
};

inline InclusionMatrix inclusion_matrix(const KGraph& g, int s) { return InclusionMatrix(g, s); }

inline RankResult rank_exact(const InclusionMatrix& m, std::uint64_t seed = 0) { return rank_exact(m.dense(), seed); }

/// rk M^r_s(G), exact.
inline std::size_t inclusion_rank(const KGraph& g, int s, std::uint64_t seed = 0) {
    return rank_exact(inclusion_matrix(g, s), seed).rank;
}

inline constexpr int kGottliebCap = 9;

struct GottliebReport {
    int n = 0, r = 0, s = 0;
    std::size_t rank = 0;
    Count expected = 0;  ///< min(binom(n, r), binom(n, s))
    bool holds = false;
};

inline GottliebReport gottlieb_check(int n, int r, int s) {
    if (!(0 <= s && s <= r && r <= n)) throw domain_error("Gottlieb check requires 0 <= s <= r <= n");
    if (n > kGottliebCap) throw domain_error("Gottlieb check size cap exceeded");
    GottliebReport rep{n, r, s};
    rep.rank = inclusion_rank(complete_graph(n, r), s);
    rep.expected = std::min(binomial(n, r), binomial(n, s));
    rep.holds = rep.rank == rep.expected;
    return rep;
}

struct IdentityMatrixReport {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Count mismatches = 0;
    bool holds = false;
};

/// M^t_u(H) M^u_{u-1}(K) = (t-u+1) M^t_{u-1}(H), K the complete u-graph on
/// the vertices of H; compared entrywise over all columns.
inline IdentityMatrixReport inclusion_identity_check(const KGraph& h, int u) {
    const int t = h.r();
    if (!(1 <= u && u <= t)) throw domain_error("identity check requires 1 <= u <= t");
    const InclusionMatrix left = inclusion_matrix(h, u);
    const InclusionMatrix right = inclusion_matrix(complete_graph(h.n(), u), u - 1);
    const InclusionMatrix target = inclusion_matrix(h, u - 1);
    IdentityMatrixReport rep;
    rep.rows = left.rows();
    rep.cols = right.cols();
    std::vector<long long> acc(rep.cols);
    for (std::size_t i = 0; i < left.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        // row i of the product: sum of rows of the right factor selected by row i of the left
        for (std::size_t k : left.row(i))
            for (std::size_t j : right.row(k)) ++acc[j];
        for (std::size_t j = 0; j < rep.cols; ++j)
            if (acc[j] != static_cast<long long>(t - u + 1) * target.entry(i, j)) ++rep.mismatches;
    }
    rep.holds = rep.mismatches == 0;
    return rep;
}

struct RecursionReport {
    std::size_t rank = 0;              ///< rk M^r_s(G)
    std::size_t rank_del_s = 0;        ///< rk M^r_s(G - x)
    std::size_t rank_link_s1 = 0;      ///< rk M^{r-1}_{s-1}(G/x)
    std::size_t rank_del_s1 = 0;       ///< rk M^r_{s-1}(G - x)
    std::size_t rank_link_s = 0;       ///< rk M^{r-1}_s(G/x)
    std::size_t lower = 0;             ///< max of the two sums
    bool inequality = false;
    /// Rows through x / columns through x give blocks M^{r-1}_{s-1}(G/x),
    /// M^{r-1}_s(G/x), 0 and M^r_s(G - x).
    bool block_form = false;
    /// After the column operation, the blocks become 0, M^{r-1}_s(G/x),
    /// M^r_{s-1}(G - x), M^r_s(G - x).
    bool reduced_block_form = false;
};

inline RecursionReport rank_recursion_check(const KGraph& g, int x, int s, std::uint64_t seed = 0) {
    const int r = g.r();
    if (!(1 <= s && s <= r - 1)) throw domain_error("rank recursion requires 1 <= s <= r-1");
    if (x < 0 || x >= g.n()) throw domain_error("vertex out of range");
    const KGraph del = delete_vertex(g, x);
    const KGraph con = contract_vertex(g, x);
    RecursionReport rep;
    rep.rank = inclusion_rank(g, s, seed);
    rep.rank_del_s = inclusion_rank(del, s, seed);
    rep.rank_link_s1 = inclusion_rank(con, s - 1, seed);
    rep.rank_del_s1 = inclusion_rank(del, s - 1, seed);
    rep.rank_link_s = inclusion_rank(con, s, seed);
    rep.lower = std::max(rep.rank_del_s + rep.rank_link_s1, rep.rank_del_s1 + rep.rank_link_s);
    rep.inequality = rep.rank >= rep.lower;

    // Block form, entry by entry, using set masks for rows and columns.
    const InclusionMatrix m = inclusion_matrix(g, s);
    const std::vector<Mask> s_sets = all_subsets(g.n(), s);
    bool ok = true;
    for (std::size_t i = 0; i < m.rows() && ok; ++i) {
        const Mask a = m.row_set(i);
        const bool row_x = contains(a, x);
        for (std::size_t j = 0; j < s_sets.size() && ok; ++j) {
            const Mask S = s_sets[j];
            const bool col_x = contains(S, x);
            const int e = m.entry(i, j);
            int expect;
            if (row_x && col_x) expect = con.has_edge(a & ~bit(x)) && (S & ~bit(x) & ~(a & ~bit(x))) == 0 ? 1 : 0;
            else if (row_x) expect = (S & ~(a & ~bit(x))) == 0 ? 1 : 0;
            else if (col_x) expect = 0;
            else expect = del.has_edge(a) && (S & ~a) == 0 ? 1 : 0;
            ok = e == expect;
        }
    }
    rep.block_form = ok;

    // Column operation, scaled to integers: N = (r-s) M_1 - M_2 M^s_{s-1}(K)
    // with K the complete s-graph avoiding x. Rows through x must vanish and
    // the others equal -(r-s+1) M^r_{s-1}(G - x); the scale (s-r)/((r-s+1)(r-s))
    // then recovers the reduced block form.
    std::vector<Mask> k_sets;  // s-sets avoiding x: the columns of M_2
    for (Mask S : s_sets)
        if (!contains(S, x)) k_sets.push_back(S);
    std::vector<Mask> low_sets;  // (s-1)-sets avoiding x, indexing the columns of M_1
    for (Mask S : all_subsets(g.n(), s - 1))
        if (!contains(S, x)) low_sets.push_back(S);
    ok = true;
    for (std::size_t i = 0; i < m.rows() && ok; ++i) {
        const Mask a = m.row_set(i);
        std::map<Mask, long long> prod;  // (M_2 M^s_{s-1}(K)) row i, keyed by the (s-1)-set
        for (Mask T : k_sets)
            if ((T & ~a) == 0) for_each_subset(T, s - 1, [&](Mask sub) { ++prod[sub]; });
        for (Mask S : low_sets) {
            const long long m1 = (((S | bit(x)) & ~a) == 0) ? 1 : 0;
            const long long val = static_cast<long long>(r - s) * m1 - (prod.count(S) ? prod[S] : 0);
            const long long expect =
                contains(a, x) ? 0 : -static_cast<long long>(r - s + 1) * (((S & ~a) == 0) ? 1 : 0);
            ok = val == expect;
            if (!ok) break;
        }
    }
    rep.reduced_block_form = ok && rep.block_form;
    return rep;
}

struct RigidityReport {
    int n = 0, r = 0, s = 0;
    Count removed = 0;
    std::size_t rank = 0;
    Count full = 0;  ///< binom(n, s)
    /// |F| binom(r, s) < binom(n, r - s), exact.
    bool hypothesis = false;
    bool full_rank = false;
    bool holds() const { return !hypothesis || full_rank; }
};

/// rank of M^r_s(K^r_n - F). Asserted full only under the size hypothesis.
inline RigidityReport full_rank_robustness(int n, int r, int s, const KGraph& f, std::uint64_t seed = 0) {
    if (!(0 <= s && s <= r && 2 * r < n)) throw domain_error("rigidity requires 0 <= s <= r < n/2");
    if (f.n() != n || f.r() != r) throw domain_error("F must be an r-graph on n vertices");
    std::vector<Mask> keep;
    for (Mask e : all_subsets(n, r))
        if (!f.has_edge(e)) keep.push_back(e);
    RigidityReport rep{n, r, s};
    rep.removed = f.size();
    rep.rank = inclusion_rank(KGraph(KGraph::canonical, n, r, std::move(keep)), s, seed);
    rep.full = binomial(n, s);
    rep.hypothesis = f.size() * binomial(r, s) < binomial(n, r - s);
    rep.full_rank = rep.rank == rep.full;
    return rep;
}

/// Largest |F| meeting the rigidity hypothesis.
inline Count rigidity_admissible_size(int n, int r, int s) {
    const Count lim = binomial(n, r - s);
    const Count per = binomial(r, s);
    return (lim - 1) / per;
}

/// All r-sets through a fixed s-set: the family showing the size hypothesis
/// cannot be relaxed beyond binom(n-s, r-s).
inline KGraph rigidity_tightness_family(int n, int r, Mask fixed) {
    std::vector<Mask> out;
    for (Mask e : all_subsets(n, r))
        if ((fixed & ~e) == 0) out.push_back(e);
    return KGraph(KGraph::canonical, n, r, std::move(out));
}

struct ProbeRow {
    Count edges = 0;
    Count instances = 0;
    Count violations = 0;     ///< rank < binom(x, s)
    Count equalities = 0;     ///< rank == binom(x, s) within tolerance
    Count equalities_non_integral = 0;
    double min_slack = std::numeric_limits<double>::infinity();  ///< rank - binom(x, s)
};

struct ProbeReport {
    int r = 0, s = 0, n = 0;
    bool exhaustive = false;
    std::vector<ProbeRow> rows;
    /// Smallest size from which no violations were observed up to the top of
    /// the range; empty if the top size itself had a violation.
    std::optional<Count> onset;
};

/// Compares rk M^r_s(G) with binom(x, s), |G| = binom(x, r), over r-graphs on
/// n vertices with sizes in [lo, hi]. Records, never asserts: the inequality
/// is only claimed for sufficiently large graphs.
inline ProbeReport kk_alg_probe(int r, int s, Count lo, Count hi, int n, int samples = 200,
                                std::uint64_t seed = 0) {
    if (!(r > s && s > 0)) throw domain_error("probe requires r > s > 0");
    if (r > n) throw domain_error("probe requires r <= n");
    const std::vector<Mask> all = all_subsets(n, r);
    hi = std::min<Count>(hi, all.size());
    ProbeReport rep;
    rep.r = r;
    rep.s = s;
    rep.n = n;
    rep.exhaustive = all.size() <= 15;
    std::map<Count, ProbeRow> rows;
    auto record = [&](const std::vector<Mask>& edges) {
        const Count m = edges.size();
        if (m < lo || m > hi || m == 0) return;
        const KGraph g(KGraph::canonical, n, r, edges);
        const double x = solve_x(m, r);
        const double slack = static_cast<double>(inclusion_rank(g, s)) - gbinom(x, s);
        ProbeRow& row = rows[m];
        row.edges = m;
        ++row.instances;
        row.min_slack = std::min(row.min_slack, slack);
        const double tol = 1e-9 * std::max(1.0, gbinom(x, s));
        if (slack < -tol) ++row.violations;
        else if (slack <= tol) {
            ++row.equalities;
            if (!detail::exact_binomial_root(m, r)) ++row.equalities_non_integral;
        }
    };
    if (rep.exhaustive) {
        std::vector<Mask> edges;
        for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << all.size()); ++pick) {
            const int size = std::popcount(pick);
            if (static_cast<Count>(size) < lo || static_cast<Count>(size) > hi) continue;
            edges.clear();
            for (std::uint64_t p = pick; p != 0; p &= p - 1) edges.push_back(all[static_cast<std::size_t>(std::countr_zero(p))]);
            record(edges);
        }
    } else {
        std::mt19937_64 rng(seed);
        std::vector<Mask> pool = all;
        for (Count m = std::max<Count>(lo, 1); m <= hi; ++m) {
            for (int t = 0; t < samples; ++t) {
                std::shuffle(pool.begin(), pool.end(), rng);
                std::vector<Mask> edges(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
                std::sort(edges.begin(), edges.end());
                record(edges);
            }
        }
    }
    for (auto& [m, row] : rows) rep.rows.push_back(row);
    for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it) {
        if (it->violations != 0) break;
        rep.onset = it->edges;
    }
    return rep;
}

}  // namespace shadowkit
