#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadowkit {

/// A subset of {0, ..., 63} stored as one machine word.
using Mask = std::uint64_t;

/// Exact nonnegative counts (edges, cliques, orders).
using Count = std::uint64_t;

inline constexpr int kMaxVertices = 64;

/// Raised when an operation is called outside its mathematical domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a documented precondition of a checker does not hold.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask bit(int v) { return Mask{1} << v; }

inline bool contains(Mask set, int v) { return (set >> v) & 1U; }

/// Mask with bits 0..n-1 set.
inline Mask universe(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

inline int highest_bit(Mask m) { return 63 - std::countl_zero(m); }

inline std::vector<int> members(Mask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(popcount(m)));
    while (m != 0) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

inline Mask from_members(const std::vector<int>& vs) {
    Mask m = 0;
    for (int v : vs) m |= bit(v);
    return m;
}

/// Exact binomial coefficient; throws std::overflow_error past 2^64.
/// binomial(n, k) is zero for k < 0 or k > n.
inline Count binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (long long i = 0; i < k; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - i) / static_cast<unsigned __int128>(i + 1);
        if (acc > std::numeric_limits<Count>::max())
            throw std::overflow_error("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                                      ") exceeds 64 bits");
    }
    return static_cast<Count>(acc);
}

inline Count factorial(int n) {
    Count f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<Count>(i);
    return f;
}

/// Next mask with the same popcount in increasing numeric order (Gosper).
/// Returns 0 when the sequence leaves the 64-bit word.
inline Mask next_combination(Mask m) {
    if (m == 0) return 0;
    const Mask c = m & (~m + 1);
    const Mask r = m + c;
    if (r == 0) return 0;
    return (((r ^ m) >> 2) / c) | r;
}

/// All k-subsets of {0..n-1} in colex order.
inline std::vector<Mask> all_subsets(int n, int k) {
    std::vector<Mask> out;
    if (k < 0 || k > n) return out;
    if (k == 0) return {Mask{0}};
    const Mask limit = universe(n);
    for (Mask m = universe(k); m != 0 && (m & ~limit) == 0; m = next_combination(m)) out.push_back(m);
    return out;
}

/// Calls f on every k-subset of `set` (as masks), in colex order.
template <class F>
void for_each_subset(Mask set, int k, F&& f) {
    const std::vector<int> elems = members(set);
    const int size = static_cast<int>(elems.size());
    if (k < 0 || k > size) return;
    if (k == 0) {
        f(Mask{0});
        return;
    }
    for (Mask pick = universe(k); pick != 0 && (pick >> size) == 0; pick = next_combination(pick)) {
        Mask sub = 0;
        for (Mask p = pick; p != 0; p &= p - 1) sub |= bit(elems[static_cast<std::size_t>(std::countr_zero(p))]);
        f(sub);
    }
}

/// Position of a set in the colex order of all sets of its size
/// (combinatorial number system).
inline Count colex_rank(Mask set) {
    Count rank = 0;
    int i = 1;
    for (Mask m = set; m != 0; m &= m - 1, ++i) rank += binomial(std::countr_zero(m), i);
    return rank;
}

}  // namespace shadowkit
