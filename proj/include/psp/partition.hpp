#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "psp/graph.hpp"

namespace psp {

// A k-partition of the vertex set plus the boundary-first reordering that
// component-local distance tables rely on.
//
//   assignment        vertex -> component in 0..k-1 (current id space)
//   component_members per-component vertex lists, ascending ids
//   boundary_flags    flag[v] iff v has a neighbor in another component
//   permutation       old id -> new id for the stable boundary-first order:
//                     components in id order, boundary block before interior
//                     block, original relative order kept inside each block.
//                     Identity when the graph is already in that order.
struct Partition {
    std::uint32_t k = 0;
    std::vector<std::uint32_t> assignment;
    std::vector<std::vector<VertexId>> component_members;
    std::vector<std::uint8_t> boundary_flags;
    std::vector<VertexId> permutation;
    std::vector<VertexId> inverse_permutation;

    std::size_t boundary_count() const;
    std::size_t boundary_count(std::uint32_t component) const;

    bool operator==(const Partition&) const = default;
};

// Largest allowed component size: ceil(1.10 * n / k).
std::size_t balance_cap(std::size_t n, std::uint32_t k);

// Balanced k-partition by region growing from k pseudo-random seed vertices
// (multi-source BFS by hop count, ties to the smallest-id claimer), followed
// by boundary-reducing refinement sweeps. Deterministic for a fixed seed.
Partition partition_graph(const Graph& g, std::uint32_t k, std::uint64_t seed);

// Flags exactly the vertices incident to a cross-component edge.
std::vector<std::uint8_t> compute_boundary(const Graph& g,
                                           std::span<const std::uint32_t> assignment);

// Stable boundary-first permutation (old id -> new id) for the given
// assignment and flags.
std::vector<VertexId> compute_reorder_permutation(std::uint32_t k,
                                                  std::span<const std::uint32_t> assignment,
                                                  std::span<const std::uint8_t> boundary_flags);

// Relabels g under p's boundary-first permutation. Returns the isomorphic
// graph and the partition expressed in the new id space (whose own
// permutation is then the identity).
std::pair<Graph, Partition> reorder_vertices(const Graph& g, const Partition& p);

// Rebuilds members/flags/permutation from an assignment. Used by tests and
// loaders that materialize a Partition from its serialized core.
Partition make_partition(const Graph& g, std::uint32_t k,
                         std::vector<std::uint32_t> assignment);

}  // namespace psp
