#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowkit/common.hpp"

namespace shadowkit {

/// binom(x, r) = x(x-1)...(x-r+1)/r! as a polynomial in real x.
/// After step i the accumulator is binom(x, i+1), so integer x stays exact
/// while the values fit in 53 bits.
inline double gbinom(double x, int r) {
    if (r < 0) throw domain_error("gbinom requires r >= 0");
    double v = 1.0;
    for (int i = 0; i < r; ++i) v = v * (x - i) / static_cast<double>(i + 1);
    return v;
}

/// binom(x, r) for x >= r-1 and 0 below: the nondecreasing branch of the
/// polynomial, used where binom(y, r) stands for a count.
inline double gbinom_monotone(double x, int r) { return x >= r - 1 ? gbinom(x, r) : 0.0; }

namespace detail {

/// Integer k >= r with binomial(k, r) == m, if one exists.
inline std::optional<long long> exact_binomial_root(Count m, int r) {
    long long lo = r, hi = r;
    auto value = [&](long long k) -> Count {
        try {
            return binomial(k, r);
        } catch (const std::overflow_error&) {
            return std::numeric_limits<Count>::max();
        }
    };
    while (value(hi) < m) {
        lo = hi;
        hi = hi * 2 + 1;
    }
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        (value(mid) < m ? lo : hi) = mid;
    }
    if (value(lo) == m) return lo;
    if (value(hi) == m) return hi;
    return std::nullopt;
}

}  // namespace detail

/// The unique x >= r-1 with binom(x, r) = m (real m).
///
/// Exact integer roots are detected first; otherwise bisection on the
/// increasing branch (r-1, inf) runs to full double resolution.
inline double solve_x(double m, int r) {
    if (r < 1) throw domain_error("solve_x requires r >= 1");
    if (!(m >= 0.0) || !std::isfinite(m)) throw domain_error("solve_x requires m >= 0");
    if (m == 0.0) return r - 1.0;
    if (m == std::floor(m) && m < 1.8e19) {
        if (auto k = detail::exact_binomial_root(static_cast<Count>(m), r)) return static_cast<double>(*k);
    }
    double lo = r - 1.0;
    double hi = r - 1.0 + m + r;
    while (gbinom(hi, r) < m) hi = lo + 2.0 * (hi - lo);
    for (int it = 0; it < 4000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (gbinom(mid, r) < m ? lo : hi) = mid;
    }
    return std::abs(gbinom(lo, r) - m) <= std::abs(gbinom(hi, r) - m) ? lo : hi;
}

inline double solve_x(Count m, int r) { return solve_x(static_cast<double>(m), r); }
inline double solve_x(int m, int r) {
    if (m < 0) throw domain_error("solve_x requires m >= 0");
    return solve_x(static_cast<double>(m), r);
}

/// d/dx binom(x, r) via the sum over i of binom(x-i, r-i)/i.
inline double gbinom_derivative(double x, int r) {
    if (r < 1) throw domain_error("derivative requires r >= 1");
    double s = 0.0;
    for (int i = 1; i <= r; ++i) s += gbinom(x - i, r - i) / i;
    return s;
}

/// Outcome of evaluating one inequality or identity at concrete inputs.
struct LemmaCheckResult {
    std::string name;
    std::vector<std::pair<std::string, double>> inputs;
    double lhs = 0.0;
    /// Middle term of a chained inequality lhs < middle < rhs.
    std::optional<double> middle;
    double rhs = 0.0;
    /// Whether the lemma's side hypotheses hold at the inputs.
    bool hypotheses_met = true;
    bool satisfied = false;
    double margin = 0.0;
    std::string note;
};

namespace detail {

inline double rel_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

inline void strict_less(LemmaCheckResult& res) {
    res.margin = res.rhs - res.lhs;
    res.satisfied = res.lhs < res.rhs;
}

inline void strict_chain(LemmaCheckResult& res) {
    const double mid = *res.middle;
    res.margin = std::min(mid - res.lhs, res.rhs - mid);
    res.satisfied = res.lhs < mid && mid < res.rhs;
}

}  // namespace detail

/// binom(x+y, r) against sum_j binom(x+j-1, j) binom(y-j, r-j), to 1e-9
/// relative to the largest term.
inline LemmaCheckResult check_vandermonde(double x, double y, int r) {
    if (r < 0) throw domain_error("vandermonde requires r >= 0");
    LemmaCheckResult res{"vandermonde", {{"x", x}, {"y", y}, {"r", r}}};
    res.lhs = gbinom(x + y, r);
    double scale = std::abs(res.lhs);
    for (int j = 0; j <= r; ++j) {
        const double term = gbinom(x + j - 1, j) * gbinom(y - j, r - j);
        res.rhs += term;
        scale = std::max(scale, std::abs(term));
    }
    res.margin = 1e-9 * std::max(1.0, scale) - std::abs(res.lhs - res.rhs);
    res.satisfied = res.margin >= 0.0;
    return res;
}

enum class Fact { f1, f2, f3, f4, f5 };

struct FactParams {
    double theta = 0.0;
    double x = 0.0;
    double a = 0.0;
    double b = 0.0;
    int n = 1;
};

/// Evaluates one of the five elementary estimates; throws
/// precondition_error naming the failed hypothesis.
inline LemmaCheckResult check_facts(Fact f, const FactParams& p) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw precondition_error(std::string("hypothesis failed: ") + what);
    };
    need(p.n >= 1, "n >= 1");
    const double t = p.theta;
    const int n = p.n;
    LemmaCheckResult res;
    switch (f) {
        case Fact::f1:
            need(t > 0.0 && t < 1.0, "0 < theta < 1");
            need(t * p.x > n, "theta*x > n");
            // both sides equal theta*x at n = 1
            need(n >= 2, "n >= 2");
            res = {"f1", {{"theta", t}, {"x", p.x}, {"n", n}}};
            res.lhs = gbinom(t * p.x, n);
            res.rhs = std::pow(t, n) * gbinom(p.x, n);
            detail::strict_less(res);
            break;
        case Fact::f2: {
            need(p.a > p.b && p.b > 0.0, "a > b > 0");
            need(p.b > n - 1, "b > n - 1");
            need(n >= 2, "n >= 2");
            res = {"f2", {{"a", p.a}, {"b", p.b}, {"n", n}}};
            res.lhs = std::pow(p.a / p.b, n);
            double prod = 1.0;
            for (int i = 0; i < n; ++i) prod *= (p.a - i) / (p.b - i);
            res.middle = prod;
            res.rhs = std::pow((p.a - n + 1) / (p.b - n + 1), n);
            detail::strict_chain(res);
            break;
        }
        case Fact::f3:
            need(t > 0.0 && t < 2.0 / (3.0 * n), "0 < theta < 2/(3n)");
            res = {"f3", {{"theta", t}, {"n", n}}};
            res.lhs = std::pow(1.0 + t, n);
            res.rhs = 1.0 + 2.0 * n * t;
            detail::strict_less(res);
            break;
        case Fact::f4:
            need(t > 0.0 && t < 1.0 / (2.0 * n), "0 < theta < 1/(2n)");
            res = {"f4", {{"theta", t}, {"n", n}}};
            res.lhs = std::pow(1.0 + t, n);
            res.rhs = 2.0;
            detail::strict_less(res);
            break;
        case Fact::f5:
            need(t > 0.0 && t < 0.5, "0 < theta < 1/2");
            res = {"f5", {{"theta", t}, {"n", n}}};
            // stated as (1-theta)^(1/n) > 1 - 2 theta / n
            res.lhs = 1.0 - 2.0 * t / n;
            res.rhs = std::pow(1.0 - t, 1.0 / n);
            detail::strict_less(res);
            break;
    }
    return res;
}

/// (x-y) binom(y-1, r-1) < binom(x, r) - binom(y, r) < (x-y) binom(x, r-1)
/// for x > y >= r-1. Both inequalities degenerate to equalities at r = 1,
/// so r >= 2 is required.
inline LemmaCheckResult check_bin_diff(double x, double y, int r) {
    if (r < 2) throw precondition_error("bin-diff requires r >= 2");
    if (!(x > y && y >= r - 1)) throw precondition_error("bin-diff requires x > y >= r - 1");
    LemmaCheckResult res{"bin-diff", {{"x", x}, {"y", y}, {"r", r}}};
    res.lhs = (x - y) * gbinom(y - 1, r - 1);
    res.middle = gbinom(x, r) - gbinom(y, r);
    res.rhs = (x - y) * gbinom(x, r - 1);
    detail::strict_chain(res);
    return res;
}

enum class BinShadowMode { lemma_3_2, lemma_A2, lemma_A3_part1, lemma_A3_part2, lemma_A3_part3 };

struct BinShadowParams {
    double C = 1.0;        ///< C in the r = 2 lemma and in parts (1)/(2).
    double C_prime = 1.0;  ///< C' in parts (1)/(2).
};

/// X_s = binom(v, s) + binom(w, s-1) - binom(u, s).
inline double shadow_defect(double u, double v, double w, int s) {
    return gbinom(v, s) + gbinom(w, s - 1) - gbinom(u, s);
}

/// The v completing binom(u, r) = binom(v, r) + binom(w, r-1).
inline double complete_triple(double u, double w, int r) {
    const double rest = gbinom(u, r) - gbinom(w, r - 1);
    if (rest < 0.0) throw precondition_error("binom(w, r-1) exceeds binom(u, r)");
    return solve_x(rest, r);
}

/// Sum_{j<r} binom(t+j-1, j) phi_{r-j} after the change of variables
/// w = t+r-1, u' = u-t, v' = v-t, phi_i = binom(v'-r+i, i) + 1 - binom(u'-r+i, i).
/// Equals X_r, hence vanishes on consistent triples.
inline double transformed_defect(double u, double v, double w, int r) {
    const double t = w - r + 1;
    const double up = u - t, vp = v - t;
    double sum = 0.0;
    for (int j = 0; j <= r - 1; ++j) {
        const int i = r - j;
        const double phi = gbinom(vp - r + i, i) + 1.0 - gbinom(up - r + i, i);
        sum += gbinom(t + j - 1, j) * phi;
    }
    return sum;
}

/// Evaluates the defect-form shadow estimates on a triple with
/// binom(u, r) = binom(v, r) + binom(w, r-1).
///
/// An inconsistent triple throws. Side conditions (degree window, the sign
/// of w - u + kr) are recorded in hypotheses_met; the "u sufficiently large"
/// threshold of these lemmas is not explicit and is never asserted.
inline LemmaCheckResult check_bin_shadow(double u, double v, double w, int r, int s, BinShadowMode mode,
                                         const BinShadowParams& p = {}) {
    if (r < 2) throw precondition_error("bin-shadow requires r >= 2");
    const double xr = shadow_defect(u, v, w, r);
    if (std::abs(xr) > 1e-9 * detail::rel_scale(gbinom(u, r), 1.0))
        throw precondition_error("inconsistent triple: binom(u,r) != binom(v,r) + binom(w,r-1)");
    LemmaCheckResult res;
    res.inputs = {{"u", u}, {"v", v}, {"w", w}, {"r", r}, {"s", s}};
    const double bw = gbinom(w, r - 1);
    const double fact_r = static_cast<double>(factorial(r));
    switch (mode) {
        case BinShadowMode::lemma_3_2: {
            if (s < 1 || s > r - 1) throw precondition_error("lemma 3.2 requires 1 <= s <= r-1");
            res.name = "bin-shadow";
            res.hypotheses_met = bw >= 1.0 && bw < gbinom(u - 1, r - 1) - std::pow(u, r - s - 1) / (2.0 * fact_r);
            res.lhs = gbinom(u, s);
            res.rhs = gbinom(v, s) + gbinom(w, s - 1) - std::pow(3.0 * r, -r) / u;
            detail::strict_less(res);
            res.note = "u0(r,s) unknown: conclusion reported, not asserted";
            break;
        }
        case BinShadowMode::lemma_A2: {
            if (r != 2) throw precondition_error("lemma A.2 is the r = 2 case");
            res.name = "bin-shadow-2";
            res.inputs.emplace_back("C", p.C);
            res.hypotheses_met = p.C > 0.0 && w >= 1.0 && w < u - 1.0 - p.C;
            res.lhs = u;
            res.rhs = v + 1.0 - p.C / u;
            detail::strict_less(res);
            break;
        }
        case BinShadowMode::lemma_A3_part1:
        case BinShadowMode::lemma_A3_part2: {
            if (r < 3) throw precondition_error("lemma A.3 requires r >= 3");
            const bool part1 = mode == BinShadowMode::lemma_A3_part1;
            res.name = part1 ? "bin-shadow-r(1)" : "bin-shadow-r(2)";
            res.inputs.emplace_back("C", p.C);
            res.inputs.emplace_back("C'", p.C_prime);
            const bool window = p.C > 0.0 && p.C_prime > 0.0 && p.C_prime <= bw && bw < gbinom(u - 1, r - 1) - p.C;
            res.hypotheses_met = window && (part1 ? w > u - 3.0 * r : w < u - 2.0 * r);
            res.lhs = part1 ? p.C / (3.0 * u) : std::min(1.0 / (4.0 * fact_r), p.C_prime);
            res.rhs = shadow_defect(u, v, w, r - 1);
            detail::strict_less(res);
            res.note = "u sufficiently large: threshold not explicit";
            break;
        }
        case BinShadowMode::lemma_A3_part3: {
            if (r < 3) throw precondition_error("lemma A.3 requires r >= 3");
            if (s < 1 || s > r - 1) throw precondition_error("part (3) requires 1 <= s <= r-1");
            res.name = "bin-shadow-r(3)";
            const double C = std::pow(u, r - s - 1) / (2.0 * fact_r);
            res.inputs.emplace_back("C", C);
            res.hypotheses_met = 1.0 <= bw && bw < gbinom(u - 1, r - 1) - C;
            res.lhs = std::pow(3.0 * r, -r) / u;
            res.rhs = shadow_defect(u, v, w, s);
            detail::strict_less(res);
            res.note = "u sufficiently large: threshold not explicit";
            break;
        }
    }
    return res;
}

}  // namespace shadowkit
