#pragma once

// Exponential-time reference answers. Caps are hard limits; MCW_ORACLE_CAP can
// only lower them.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/graph.hpp"

namespace mcw {

inline constexpr int kHamiltonCap = 22;
inline constexpr int kMatchingCap = 22;
inline constexpr int kEdsCap = 18;
inline constexpr int kMaxCutCap = 26;

inline int oracle_cap(int builtin) {
    if (const char* s = std::getenv("MCW_ORACLE_CAP")) {
        int v = std::atoi(s);
        if (v > 0) return std::min(v, builtin);
    }
    return builtin;
}

inline void check_cap(const SimpleGraph& g, int builtin, const char* what) {
    int cap = oracle_cap(builtin);
    if (g.n() > cap)
        throw TooLarge(std::string(what) + ": " + std::to_string(g.n()) + " vertices exceeds oracle cap " + std::to_string(cap));
}

namespace detail {

// reach[mask] = endpoints of paths that start at s and visit exactly mask
inline std::vector<std::uint32_t> held_karp(const std::vector<std::uint32_t>& adj, int s) {
    int n = int(adj.size());
    std::vector<std::uint32_t> reach(std::size_t(1) << n, 0);
    reach[1u << s] = 1u << s;
    for (std::uint32_t mask = 1; mask < reach.size(); ++mask) {
        std::uint32_t ends = reach[mask];
        if (!ends || !(mask >> s & 1)) continue;
        for (std::uint32_t e = ends; e; e &= e - 1) {
            int w = std::countr_zero(e);
            for (std::uint32_t nx = adj[w] & ~mask; nx; nx &= nx - 1) {
                int x = std::countr_zero(nx);
                reach[mask | (1u << x)] |= 1u << x;
            }
        }
    }
    return reach;
}

// nu[mask] = maximum matching size of G[mask]
inline std::vector<std::uint8_t> matching_table(const std::vector<std::uint32_t>& adj) {
    int n = int(adj.size());
    std::vector<std::uint8_t> nu(std::size_t(1) << n, 0);
    for (std::uint32_t mask = 1; mask < nu.size(); ++mask) {
        int v = std::countr_zero(mask);
        std::uint32_t rest = mask & (mask - 1);
        std::uint8_t best = nu[rest];
        for (std::uint32_t nb = adj[v] & rest; nb; nb &= nb - 1) {
            std::uint32_t w = nb & -nb;
            best = std::max<std::uint8_t>(best, 1 + nu[rest & ~w]);
        }
        nu[mask] = best;
    }
    return nu;
}

}  // namespace detail

inline bool oracle_hamiltonian_path(const SimpleGraph& g, int u, int v) {
    check_cap(g, kHamiltonCap, "oracle_hamiltonian_path");
    if (u == v) return g.n() == 1;
    auto reach = detail::held_karp(g.adj_masks(), u);
    return reach.back() >> v & 1;
}

// every Hamiltonian cycle passes vertex 0, so one Held–Karp table decides all edges 0w
inline bool oracle_hamiltonian_cycle(const SimpleGraph& g) {
    check_cap(g, kHamiltonCap, "oracle_hamiltonian_cycle");
    if (g.n() < 3) return false;
    auto adj = g.adj_masks();
    auto reach = detail::held_karp(adj, 0);
    return (reach.back() & adj[0]) != 0;
}

inline int oracle_max_matching(const SimpleGraph& g) {
    check_cap(g, kMatchingCap, "oracle_max_matching");
    if (g.n() == 0) return 0;
    return detail::matching_table(g.adj_masks()).back();
}

// min over vertex covers S of |S| - nu(G[S])
inline int oracle_eds(const SimpleGraph& g) {
    check_cap(g, kEdsCap, "oracle_eds");
    int n = g.n();
    if (n == 0) return 0;
    auto adj = g.adj_masks();
    auto nu = detail::matching_table(adj);
    std::uint32_t full = std::uint32_t(nu.size() - 1);
    int best = n;
    for (std::uint32_t s = 0; s <= full; ++s) {
        std::uint32_t out = full & ~s;
        bool cover = true;
        for (std::uint32_t o = out; o && cover; o &= o - 1)
            if (adj[std::countr_zero(o)] & out) cover = false;
        if (cover) best = std::min(best, std::popcount(s) - nu[s]);
    }
    return best;
}

// Gray-code walk over sides of vertices 1..n-1; vertex 0 stays on side 1
inline long oracle_max_cut(const SimpleGraph& g) {
    check_cap(g, kMaxCutCap, "oracle_max_cut");
    int n = g.n();
    if (n <= 1) return 0;
    auto adj = g.adj_masks();
    std::uint32_t side = 0;  // bit set = side 2
    long cut = 0, best = 0;
    for (std::uint64_t t = 1; t < (std::uint64_t(1) << (n - 1)); ++t) {
        int v = std::countr_zero(t) + 1;
        std::uint32_t bit = 1u << v;
        std::uint32_t other = (side & bit) ? ~side : side;
        int crossing = std::popcount(adj[v] & other);
        cut += std::popcount(adj[v]) - 2 * crossing;
        side ^= bit;
        best = std::max(best, cut);
    }
    return best;
}

}  // namespace mcw
