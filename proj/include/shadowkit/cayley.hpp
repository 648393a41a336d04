#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "shadowkit/cyclic.hpp"
#include "shadowkit/ekr.hpp"

namespace shadowkit {

/// Lehmer-code rank of a permutation of 0..m-1; lexicographic order.
inline std::size_t lehmer_rank(const std::vector<int>& p) {
    const std::size_t m = p.size();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < m; ++j) smaller += p[j] < p[i] ? 1 : 0;
        rank = rank * (m - i) + smaller;
    }
    return rank;
}

inline std::vector<int> lehmer_unrank(std::size_t rank, int m) {
    std::vector<int> digits(static_cast<std::size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
        const std::size_t base = static_cast<std::size_t>(m - i);
        digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
        rank /= base;
    }
    std::vector<int> pool(static_cast<std::size_t>(m));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> p;
    for (int d : digits) {
        p.push_back(pool[static_cast<std::size_t>(d)]);
        pool.erase(pool.begin() + d);
    }
    return p;
}

inline constexpr std::size_t kCayleyCap = 5040;

/// Cayley graph of S_{n-1} generated by the adjacent transpositions, acting on
/// positions. Vertex i is the permutation of Lehmer rank i; it is also the
/// cyclic order of 0..n-1 obtained by appending n-1.
class CayleyGraph {
public:
    explicit CayleyGraph(int n) : n_(n) {
        if (n < 3) throw domain_error("Cayley graph requires n >= 3");
        const int m = n - 1;
        const Count count = factorial(m);
        if (count > kCayleyCap) throw domain_error("Cayley graph size cap exceeded");
        size_ = static_cast<std::size_t>(count);
        adj_.resize(size_ * degree());
        std::vector<int> p(static_cast<std::size_t>(m));
        std::iota(p.begin(), p.end(), 0);
        std::size_t v = 0;
        do {
            for (int j = 0; j < degree(); ++j) {
                std::swap(p[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j + 1)]);
                adj_[v * degree() + static_cast<std::size_t>(j)] = lehmer_rank(p);
                std::swap(p[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j + 1)]);
            }
            ++v;
        } while (std::next_permutation(p.begin(), p.end()));
    }

    int n() const { return n_; }
    int degree() const { return n_ - 2; }
    std::size_t size() const { return size_; }

    /// Neighbor of v obtained by swapping positions j and j+1.
    std::size_t neighbor(std::size_t v, int j) const { return adj_[v * degree() + static_cast<std::size_t>(j)]; }

    std::span<const std::size_t> neighbors(std::size_t v) const {
        return {adj_.data() + v * degree(), static_cast<std::size_t>(degree())};
    }

    Eigen::MatrixXd adjacency_matrix() const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size_), static_cast<Eigen::Index>(size_));
        for (std::size_t v = 0; v < size_; ++v)
            for (std::size_t w : neighbors(v)) a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) = 1.0;
        return a;
    }

    /// Y = A X using the neighbor lists.
    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const {
        Eigen::MatrixXd y = Eigen::MatrixXd::Zero(x.rows(), x.cols());
        for (std::size_t v = 0; v < size_; ++v)
            for (std::size_t w : neighbors(v)) y.row(static_cast<Eigen::Index>(v)) += x.row(static_cast<Eigen::Index>(w));
        return y;
    }

private:
    int n_;
    std::size_t size_ = 0;
    std::vector<std::size_t> adj_;
};

/// d - lambda_2 predicted in closed form: 2 - 2 cos(pi/(n-1)).
inline double bacher_gap(int n) { return 2.0 - 2.0 * std::cos(std::numbers::pi / (n - 1)); }

struct EigenResult {
    double lambda2 = 0.0;
    double residual = 0.0;  ///< ||A q - lambda2 q|| for the returned Ritz vector
    int iterations = 0;
    bool converged = false;
};

/// Second largest adjacency eigenvalue by orthogonal iteration on A + dI,
/// restricted to the complement of the all-ones vector, with Rayleigh-Ritz
/// extraction each sweep. Stops when the top Ritz residual is below tol.
inline EigenResult second_eigenvalue(const CayleyGraph& c, double tol = 1e-12, int max_iter = 200000,
                                     std::uint64_t seed = 0) {
    const auto N = static_cast<Eigen::Index>(c.size());
    const double d = c.degree();
    const Eigen::Index k = std::min<Eigen::Index>(N - 1, 24);
    EigenResult res;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(N) / std::sqrt(static_cast<double>(N));
    auto deflate = [&](Eigen::MatrixXd& x) { x -= ones * (ones.transpose() * x); };
    auto shifted = [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd { return c.apply(x) + d * x; };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd q(N, k);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < k; ++j) q(i, j) = gauss(rng);
    deflate(q);
    q = Eigen::HouseholderQR<Eigen::MatrixXd>(q).householderQ() * Eigen::MatrixXd::Identity(N, k);

    for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
        Eigen::MatrixXd bq = shifted(q);
        const Eigen::MatrixXd t = q.transpose() * bq;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (t + t.transpose()));
        const Eigen::VectorXd top = q * ritz.eigenvectors().col(k - 1);
        const double theta = ritz.eigenvalues()(k - 1);
        res.lambda2 = theta - d;
        res.residual = (shifted(top) - theta * top).norm();
        if (res.residual < tol * std::max(1.0, 2.0 * d)) {
            res.converged = true;
            break;
        }
        deflate(bq);
        q = Eigen::HouseholderQR<Eigen::MatrixXd>(bq).householderQ() * Eigen::MatrixXd::Identity(N, k);
    }
    return res;
}

struct ExpansionReport {
    int n = 0;
    Count samples = 0;
    Count failures = 0;
    double threshold = 0.0;  ///< 1/n^3
    double min_ratio = 0.0;  ///< min |N(W)|/|W| seen
    double alpha = 0.0;      ///< (d - lambda_2)/2d from the closed form
    bool alpha_exceeds = false;  ///< alpha > 1/n^3
    bool holds() const { return failures == 0; }
};

/// |N(W)|: vertices outside W with a neighbor in W.
inline std::size_t boundary_size(const CayleyGraph& c, const std::vector<char>& in) {
    std::vector<char> seen(c.size(), 0);
    std::size_t count = 0;
    for (std::size_t v = 0; v < c.size(); ++v) {
        if (!in[v]) continue;
        for (std::size_t w : c.neighbors(v))
            if (!in[w] && !seen[w]) {
                seen[w] = 1;
                ++count;
            }
    }
    return count;
}

/// Samples sets W with |W| <= (n-1)!/2: uniformly random subsets, balls
/// around the identity, and unions of cosets of the stabilizer of the last
/// position. Every sample must satisfy |N(W)| >= |W|/n^3.
inline ExpansionReport expansion_check(const CayleyGraph& c, int trials, std::uint64_t seed) {
    if (trials < 1) throw domain_error("expansion check requires trials >= 1");
    const std::size_t N = c.size();
    const std::size_t half = N / 2;
    ExpansionReport rep;
    rep.n = c.n();
    rep.threshold = 1.0 / std::pow(static_cast<double>(c.n()), 3);
    rep.alpha = bacher_gap(c.n()) / (2.0 * c.degree());
    rep.alpha_exceeds = rep.alpha > rep.threshold;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    auto test = [&](const std::vector<char>& in) {
        const auto w = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
        if (w == 0 || w > half) return;
        ++rep.samples;
        const double ratio = static_cast<double>(boundary_size(c, in)) / static_cast<double>(w);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        if (ratio < rep.threshold) ++rep.failures;
    };

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    for (int t = 0; t < trials; ++t) {
        const std::size_t w = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(half, 1))(rng);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<char> in(N, 0);
        for (std::size_t i = 0; i < w; ++i) in[order[i]] = 1;
        test(in);
    }

    // BFS balls around the identity, one sample per radius
    {
        std::vector<int> dist(N, -1);
        std::queue<std::size_t> q;
        dist[0] = 0;
        q.push(0);
        std::vector<std::size_t> bfs;
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop();
            bfs.push_back(v);
            for (std::size_t w : c.neighbors(v))
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
        }
        std::vector<char> in(N, 0);
        for (std::size_t i = 0; i < bfs.size(); ++i) {
            in[bfs[i]] = 1;
            if (i + 1 == bfs.size() || dist[bfs[i + 1]] != dist[bfs[i]]) test(in);
        }
    }

    // cosets: permutations with a given value in the last position
    {
        const int m = c.n() - 1;
        std::vector<int> last(N);
        for (std::size_t v = 0; v < N; ++v) last[v] = lehmer_unrank(v, m).back();
        for (int j = 1; j <= m / 2; ++j) {
            std::vector<char> in(N, 0);
            for (std::size_t v = 0; v < N; ++v) in[v] = last[v] < j ? 1 : 0;
            test(in);
        }
    }
    return rep;
}

struct ComponentReport {
    int n = 0;
    int r = 0;
    double delta = 0.0;
    Count orders = 0;
    Count complete_orders = 0;
    Count components = 0;
    Count largest = 0;
    std::optional<int> center;  ///< the common center of the largest component, if single
    bool single_center = false;
    Count center_degree = 0;    ///< |G_v| for that center

    bool hypothesis = false;  ///< delta < 1/(2 r n^4)
    /// complete orders >= (n-1)! - (r(n-1)! - r!(n-r)!|G|), exact.
    bool complete_count_bound = false;
    /// largest >= (1 - n^3 delta r)(n-1)!, the bound the expansion argument yields.
    bool component_bound = false;
    /// largest >= (1 - delta r)(n-1)!, the stronger form the |G_v| count needs.
    /// Not implied by the expansion argument; fails e.g. for a triangle with n = 5.
    bool strong_component_bound = false;
    /// r!(n-r)!|G_v| >= r |C'|, exact.
    bool center_count_exact = false;
    /// |G_v| >= (1 - delta r) binom(n-1, r-1).
    bool center_degree_bound = false;
};

/// Restricts the Cayley graph to the complete cyclic orders of G and studies
/// its largest connected component.
inline ComponentReport complete_component(const KGraph& g) {
    if (g.n() > kClaimCap) throw domain_error("complete-component analysis capped at n <= 8");
    if (!(1 <= g.r() && 2 * g.r() < g.n())) throw precondition_error("complete component requires 1 <= r < n/2");
    if (!is_intersecting(g)) throw precondition_error("complete component requires an intersecting family");
    const int n = g.n();
    const int r = g.r();
    const CayleyGraph c(n);
    ComponentReport rep;
    rep.n = n;
    rep.r = r;
    const double full = static_cast<double>(binomial(n - 1, r - 1));
    rep.delta = std::max(0.0, 1.0 - static_cast<double>(g.size()) / full);
    rep.orders = c.size();
    rep.hypothesis = rep.delta < 1.0 / (2.0 * r * std::pow(static_cast<double>(n), 4));

    std::vector<int> center(c.size(), -2);  // -2 incomplete, -1 complete without center
    std::size_t idx = 0;
    for_each_cyclic_order(n, [&](const CyclicOrder& s) {
        const Restriction res = restrict(g, s);
        if (res.complete) {
            center[idx] = res.center ? *res.center : -1;
            ++rep.complete_orders;
        }
        ++idx;
    });

    std::vector<int> comp(c.size(), -1);
    std::vector<std::size_t> best_members;
    for (std::size_t s = 0; s < c.size(); ++s) {
        if (center[s] == -2 || comp[s] >= 0) continue;
        std::vector<std::size_t> members_of{s};
        comp[s] = static_cast<int>(rep.components);
        for (std::size_t i = 0; i < members_of.size(); ++i)
            for (std::size_t w : c.neighbors(members_of[i]))
                if (center[w] != -2 && comp[w] < 0) {
                    comp[w] = comp[s];
                    members_of.push_back(w);
                }
        ++rep.components;
        if (members_of.size() > best_members.size()) best_members = std::move(members_of);
    }
    rep.largest = best_members.size();

    if (!best_members.empty()) {
        const int v = center[best_members.front()];
        rep.single_center = v >= 0 && std::all_of(best_members.begin(), best_members.end(),
                                                  [&](std::size_t s) { return center[s] == v; });
        if (rep.single_center) {
            rep.center = v;
            rep.center_degree = g.degrees()[static_cast<std::size_t>(v)];
        }
    }

    const Count orders = rep.orders;
    const Count top = static_cast<Count>(r) * orders;
    const Count used = factorial(r) * factorial(n - r) * static_cast<Count>(g.size());
    rep.complete_count_bound = used <= top && rep.complete_orders + (top - used) >= orders;
    const double n3 = std::pow(static_cast<double>(n), 3);
    rep.component_bound = static_cast<double>(rep.largest) + 1e-9 >= (1.0 - n3 * rep.delta * r) * static_cast<double>(orders);
    rep.strong_component_bound = static_cast<double>(rep.largest) + 1e-9 >= (1.0 - rep.delta * r) * static_cast<double>(orders);
    if (rep.single_center) {
        rep.center_count_exact = factorial(r) * factorial(n - r) * rep.center_degree >= static_cast<Count>(r) * rep.largest;
        rep.center_degree_bound = static_cast<double>(rep.center_degree) + 1e-9 >= (1.0 - rep.delta * r) * full;
    }
    return rep;
}

}  // namespace shadowkit
