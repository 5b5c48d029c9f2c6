#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psp/graph.hpp"
#include "psp/partition.hpp"
#include "psp/placement.hpp"
#include "psp/shortest_paths.hpp"

namespace psp {

// Graph on the boundary vertices: every original cross-component edge plus,
// per component, clique edges weighted by the intra-component distance
// (pairs unreachable inside their component get no clique edge). Distances
// between boundary vertices in this graph equal those in the full graph.
//
// Boundary id b corresponds to reordered vertex global_of[b]; component c's
// boundary ids are the contiguous range [component_offset[c],
// component_offset[c+1]).
struct BoundaryGraph {
    Graph graph;
    std::vector<VertexId> global_of;
    std::vector<std::size_t> component_offset;
};

// Size and wall-clock accounting for one preprocessing run.
struct BuildStats {
    double partition_ms = 0.0;       // phase 1: partition + reorder
    double component_apsp_ms = 0.0;  // phase 2: per-component tables
    double boundary_ms = 0.0;        // phase 3: boundary graph + its tables
    std::size_t boundary_total = 0;
    std::size_t bg_edges = 0;
    std::size_t stored_entries = 0;
    std::size_t peak_table_entries_per_worker = 0;
};

// The preprocessed distance oracle. All vertex data lives in the reordered
// id space: component c occupies [component_offset[c], component_offset[c+1])
// with its boundary vertices first, so boundary rows and columns form
// prefixes of each component table.
//
// `permutation` maps original ids (the caller's space) to reordered ids.
// `placement` only routes simulated cross-worker traffic; it is runtime
// state, not part of the persisted oracle identity.
struct Oracle {
    std::size_t n = 0;
    std::uint32_t k = 0;

    std::vector<VertexId> permutation;
    std::vector<VertexId> inverse_permutation;

    Partition partition;
    std::vector<std::size_t> component_offset;  // k+1 entries
    std::vector<std::size_t> boundary_offset;   // k+1 entries, boundary-id space
    std::vector<VertexId> boundary_vertex;      // boundary id -> reordered vertex

    std::vector<Matrix> component_tables;  // |C| x |C|, local ids boundary-first
    std::vector<Matrix> boundary_tables;   // |B(C)| x b, rows in boundary-id order

    Placement placement;

    std::size_t b() const { return boundary_vertex.size(); }
    std::size_t component_size(std::uint32_t c) const {
        return component_offset[c + 1] - component_offset[c];
    }
    std::size_t boundary_size(std::uint32_t c) const {
        return boundary_offset[c + 1] - boundary_offset[c];
    }

    // Total table entries: sum over c of |C|^2 + |B(C)| * b.
    std::size_t stored_entries() const;

    // Field-by-field equality ignoring placement, which save/load does not
    // carry.
    bool same_data(const Oracle& other) const;
};

// Runs the full preprocessing pipeline: partition + reorder, per-component
// dense APSP, boundary graph construction, SSSP in the boundary graph from
// every boundary vertex. Components are processed by a task pool of width
// min(workers, k); the result is identical for every worker count.
// Throws std::invalid_argument for k outside 1..n.
Oracle build_oracle(const Graph& g, std::uint32_t k, unsigned workers, std::uint64_t seed,
                    BuildStats* stats = nullptr);

// Phase-3 boundary graph over the reordered graph. `tables` are the
// per-component distance tables, indexed by boundary-first local ids.
BoundaryGraph build_boundary_graph(const Graph& reordered, const Partition& p,
                                   std::span<const Matrix> tables);

// One |B(C)| x b matrix per component: exact boundary-graph distances from
// each of C's boundary vertices to every boundary vertex.
std::vector<Matrix> boundary_apsp(const BoundaryGraph& bg, const Partition& p,
                                  unsigned workers);

}  // namespace psp
