#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "shadowkit/kgraph.hpp"

namespace shadowkit {

/// K^r_n with `removed` edges deleted uniformly at random.
inline KGraph gen_complete(int n, int r, Count removed = 0, std::uint64_t seed = 0) {
    std::vector<Mask> all = all_subsets(n, r);
    if (removed > all.size()) throw domain_error("cannot remove more edges than exist");
    if (removed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(all.size() - static_cast<std::size_t>(removed));
        std::sort(all.begin(), all.end());
    }
    return KGraph(KGraph::canonical, n, r, std::move(all));
}

/// First m r-sets in colex order, on at least n vertices.
inline KGraph gen_colex(int n, int r, Count m) {
    const KGraph seg = colex_segment(r, m);
    if (seg.n() > n) throw domain_error("colex segment needs more vertices than n");
    return KGraph(KGraph::canonical, n, r, {seg.edges().begin(), seg.edges().end()});
}

/// All r-sets through v.
inline KGraph gen_star(int n, int r, int v) {
    if (v < 0 || v >= n) throw domain_error("vertex out of range");
    if (r < 1) throw domain_error("star requires r >= 1");
    std::vector<Mask> out;
    for (Mask e : all_subsets(n, r))
        if (contains(e, v)) out.push_back(e);
    return KGraph(KGraph::canonical, n, r, std::move(out));
}

/// An intersecting perturbation of the star at v: `foreign` pairwise
/// intersecting r-sets avoiding v are added, star edges missing any of them
/// are dropped, then `removed` further star edges are deleted at random.
inline KGraph gen_star_perturbed(int n, int r, int v, Count removed, Count foreign, std::uint64_t seed = 0) {
    if (!(1 <= r && r < n)) throw domain_error("star perturbation requires 1 <= r < n");
    if (v < 0 || v >= n) throw domain_error("vertex out of range");
    std::mt19937_64 rng(seed);
    std::vector<Mask> outside;
    for (Mask e : all_subsets(n, r))
        if (!contains(e, v)) outside.push_back(e);
    std::vector<Mask> extra;
    for (int attempt = 0; attempt < 64 && extra.size() < foreign; ++attempt) {
        extra.clear();
        std::shuffle(outside.begin(), outside.end(), rng);
        for (Mask e : outside) {
            if (extra.size() == foreign) break;
            if (std::all_of(extra.begin(), extra.end(), [&](Mask f) { return (e & f) != 0; })) extra.push_back(e);
        }
    }
    if (extra.size() < foreign) throw domain_error("cannot place that many intersecting foreign edges");
    std::vector<Mask> star;
    for (Mask e : all_subsets(n, r)) {
        if (!contains(e, v)) continue;
        if (std::all_of(extra.begin(), extra.end(), [&](Mask f) { return (e & f) != 0; })) star.push_back(e);
    }
    if (removed > star.size()) throw domain_error("cannot remove more star edges than remain");
    std::shuffle(star.begin(), star.end(), rng);
    star.resize(star.size() - static_cast<std::size_t>(removed));
    star.insert(star.end(), extra.begin(), extra.end());
    return KGraph::from_unsorted(n, r, std::move(star));
}

/// Tight cycle: the n sets {i, i+1, ..., i+r-1} mod n.
inline KGraph gen_cycle(int n, int r = 2) {
    if (!(1 <= r && r <= n)) throw domain_error("cycle requires 1 <= r <= n");
    std::vector<Mask> out;
    for (int i = 0; i < n; ++i) {
        Mask m = 0;
        for (int k = 0; k < r; ++k) m |= bit((i + k) % n);
        out.push_back(m);
    }
    return KGraph::from_unsorted(n, r, std::move(out));
}

/// m distinct r-sets chosen uniformly at random.
inline KGraph gen_random(int n, int r, Count m, std::uint64_t seed = 0) {
    std::vector<Mask> all = all_subsets(n, r);
    if (m > all.size()) throw domain_error("more edges requested than r-sets exist");
    std::mt19937_64 rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(m));
    std::sort(all.begin(), all.end());
    return KGraph(KGraph::canonical, n, r, std::move(all));
}

}  // namespace shadowkit
