#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace shadowkit {

/// Dense integer matrix in row-major order.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<long long> data;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
    long long& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    long long operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

enum class RankMethod { fraction_free_int128, fraction_free_bigint };

struct RankResult {
    std::size_t rank = 0;
    RankMethod method = RankMethod::fraction_free_int128;
    /// Pivot rows (original indices) and pivot columns, in elimination order.
    std::vector<std::size_t> basis_rows;
    std::vector<std::size_t> basis_cols;
    std::uint64_t prime = 0;
    std::size_t modular_rank = 0;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    for (; e != 0; e >>= 1) {
        if (e & 1U) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
    }
    return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s && composite; ++i) {
            x = mulmod(x, x, n);
            composite = x != n - 1;
        }
        if (composite) return false;
    }
    return true;
}

/// A prime drawn uniformly-ish from [2^60, 2^61).
inline std::uint64_t random_prime_61(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 60, (std::uint64_t{1} << 61) - 1);
    for (;;) {
        const std::uint64_t c = dist(rng) | 1U;
        if (is_prime_u64(c)) return c;
    }
}

inline std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
    std::vector<std::uint64_t> a(m.data.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long long v = m.data[i] % static_cast<long long>(p);
        a[i] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<long long>(p) : v);
    }
    const std::size_t R = m.rows, C = m.cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t piv = rank;
        while (piv < R && a[piv * C + c] == 0) ++piv;
        if (piv == R) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < C; ++j) std::swap(a[piv * C + j], a[rank * C + j]);
        const std::uint64_t inv = powmod(a[rank * C + c], p - 2, p);
        for (std::size_t i = rank + 1; i < R; ++i) {
            const std::uint64_t f = mulmod(a[i * C + c], inv, p);
            if (f == 0) continue;
            for (std::size_t j = c; j < C; ++j) {
                const std::uint64_t sub = mulmod(f, a[rank * C + j], p);
                a[i * C + j] = a[i * C + j] >= sub ? a[i * C + j] - sub : a[i * C + j] + p - sub;
            }
        }
        ++rank;
    }
    return rank;
}

struct Int128Ops {
    using T = __int128;
    static bool mul(T a, T b, T& out) { return !__builtin_mul_overflow(a, b, &out); }
    static bool sub(T a, T b, T& out) { return !__builtin_sub_overflow(a, b, &out); }
};

/// Fraction-free Gaussian elimination (Bareiss). Every intermediate entry is
/// a minor of the input, so the division by the previous pivot is exact;
/// skipping zero columns preserves this. Pivot: first nonzero row in the
/// current column. Returns false if T overflowed.
template <class T, class Mul, class Sub>
bool bareiss(const IntMatrix& m, Mul mul, Sub sub, RankResult& out) {
    const std::size_t R = m.rows, C = m.cols;
    std::vector<T> a(m.data.begin(), m.data.end());
    std::vector<std::size_t> row_id(R);
    for (std::size_t i = 0; i < R; ++i) row_id[i] = i;
    out.basis_rows.clear();
    out.basis_cols.clear();
    T prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t piv = rank;
        while (piv < R && a[piv * C + c] == 0) ++piv;
        if (piv == R) continue;
        if (piv != rank) {
            for (std::size_t j = 0; j < C; ++j) std::swap(a[piv * C + j], a[rank * C + j]);
            std::swap(row_id[piv], row_id[rank]);
        }
        const T p = a[rank * C + c];
        for (std::size_t i = rank + 1; i < R; ++i) {
            const T f = a[i * C + c];
            for (std::size_t j = c + 1; j < C; ++j) {
                T x, y, z;
                if (!mul(p, a[i * C + j], x) || !mul(f, a[rank * C + j], y) || !sub(x, y, z)) return false;
                a[i * C + j] = z / prev;
            }
            a[i * C + c] = 0;
        }
        prev = p;
        out.basis_rows.push_back(row_id[rank]);
        out.basis_cols.push_back(c);
        ++rank;
    }
    out.rank = rank;
    return true;
}

}  // namespace detail

/// Exact rank over the rationals. The fraction-free elimination runs in
/// checked 128-bit arithmetic and falls back to arbitrary precision on
/// overflow; the result is then confirmed modulo a random 61-bit prime.
/// A modular rank can only be smaller, so agreement certifies both.
inline RankResult rank_exact(const IntMatrix& m, std::uint64_t seed = 0) {
    RankResult res;
    const bool fast = detail::bareiss<__int128>(m, detail::Int128Ops::mul, detail::Int128Ops::sub, res);
    if (!fast) {
        using Big = boost::multiprecision::cpp_int;
        auto mul = [](const Big& a, const Big& b, Big& out) {
            out = a * b;
            return true;
        };
        auto sub = [](const Big& a, const Big& b, Big& out) {
            out = a - b;
            return true;
        };
        detail::bareiss<Big>(m, mul, sub, res);
        res.method = RankMethod::fraction_free_bigint;
    }
    res.prime = detail::random_prime_61(seed);
    res.modular_rank = detail::rank_mod_p(m, res.prime);
    if (res.modular_rank != res.rank) throw std::logic_error("modular and exact rank disagree");
    return res;
}

}  // namespace shadowkit
