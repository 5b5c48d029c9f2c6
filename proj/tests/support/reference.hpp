#pragma once

// Independent ground-truth helpers for tests. Deliberately naive: the
// textbook algorithms here share no code with the library implementations
// they are used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "psp/graph.hpp"
#include "psp/shortest_paths.hpp"

namespace ref {

// Plain triple-loop Floyd-Warshall.
inline psp::Matrix apsp(const psp::Graph& g) {
    const std::size_t n = g.num_vertices();
    psp::Matrix d(n, n, psp::kUnreachable);
    for (psp::VertexId v = 0; v < n; ++v) {
        d(v, v) = 0.0;
        for (const psp::Neighbor& nb : g.neighbors(v)) d(v, nb.to) = nb.weight;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
            }
        }
    }
    return d;
}

// Shortest path by exhaustive simple-path enumeration. Only for tiny graphs;
// checks the checkers.
inline double brute_force_distance(const psp::Graph& g, psp::VertexId s, psp::VertexId t) {
    std::vector<char> on_path(g.num_vertices(), 0);
    double best = psp::kUnreachable;
    auto dfs = [&](auto&& self, psp::VertexId v, double len) -> void {
        if (len >= best) return;
        if (v == t) {
            best = len;
            return;
        }
        on_path[v] = 1;
        for (const psp::Neighbor& nb : g.neighbors(v)) {
            if (!on_path[nb.to]) self(self, nb.to, len + nb.weight);
        }
        on_path[v] = 0;
    };
    dfs(dfs, s, 0.0);
    return best;
}

// Minimum total boundary-vertex count over every 2-coloring whose parts both
// fit the size cap. Exhaustive over 2^n colorings; n must be small.
inline std::size_t min_boundary_balanced_bipartition(const psp::Graph& g, std::size_t cap) {
    const std::size_t n = g.num_vertices();
    std::size_t best = n + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const std::size_t ones = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (ones > cap || n - ones > cap) continue;
        std::size_t boundary = 0;
        for (psp::VertexId v = 0; v < n; ++v) {
            const bool side = (mask >> v) & 1;
            for (const psp::Neighbor& nb : g.neighbors(v)) {
                if (side != (((mask >> nb.to) & 1) != 0)) {
                    ++boundary;
                    break;
                }
            }
        }
        best = std::min(best, boundary);
    }
    return best;
}

inline std::vector<std::pair<psp::VertexId, psp::VertexId>> random_pairs(std::size_t n,
                                                                         std::size_t count,
                                                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<psp::VertexId, psp::VertexId>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        pairs.emplace_back(static_cast<psp::VertexId>(rng() % n),
                           static_cast<psp::VertexId>(rng() % n));
    }
    return pairs;
}

}  // namespace ref
