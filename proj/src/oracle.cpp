#include "psp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "psp/parallel.hpp"

namespace psp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Subgraph induced by the contiguous vertex range [base, base + size),
// relabeled to local ids 0..size-1. Neighbor order is inherited from the
// parent graph, so lists stay sorted.
Graph induced_range_subgraph(const Graph& g, std::size_t base, std::size_t size) {
    std::vector<std::size_t> offsets(size + 1, 0);
    for (std::size_t i = 0; i < size; ++i) {
        const VertexId v = static_cast<VertexId>(base + i);
        std::size_t deg = 0;
        for (const Neighbor& nb : g.neighbors(v)) {
            if (nb.to >= base && nb.to < base + size) ++deg;
        }
        offsets[i + 1] = offsets[i] + deg;
    }
    std::vector<Neighbor> adjacency(offsets[size]);
    std::size_t at = 0;
    for (std::size_t i = 0; i < size; ++i) {
        const VertexId v = static_cast<VertexId>(base + i);
        for (const Neighbor& nb : g.neighbors(v)) {
            if (nb.to >= base && nb.to < base + size) {
                adjacency[at++] = {static_cast<VertexId>(nb.to - base), nb.weight};
            }
        }
    }
    return Graph::from_raw(size, std::move(offsets), std::move(adjacency));
}

std::vector<std::size_t> component_ranges(const Partition& p, std::size_t n) {
    std::vector<std::size_t> offsets(p.k + 1, 0);
    for (std::uint32_t c = 0; c < p.k; ++c) {
        offsets[c + 1] = offsets[c] + p.component_members[c].size();
    }
    if (offsets[p.k] != n) {
        throw std::invalid_argument("oracle: partition does not cover the graph");
    }
    return offsets;
}

}  // namespace

std::size_t Oracle::stored_entries() const {
    std::size_t total = 0;
    for (std::uint32_t c = 0; c < k; ++c) {
        total += component_size(c) * component_size(c);
        total += boundary_size(c) * b();
    }
    return total;
}

bool Oracle::same_data(const Oracle& other) const {
    return n == other.n && k == other.k && permutation == other.permutation &&
           inverse_permutation == other.inverse_permutation && partition == other.partition &&
           component_offset == other.component_offset &&
           boundary_offset == other.boundary_offset &&
           boundary_vertex == other.boundary_vertex &&
           component_tables == other.component_tables &&
           boundary_tables == other.boundary_tables;
}

BoundaryGraph build_boundary_graph(const Graph& reordered, const Partition& p,
                                   std::span<const Matrix> tables) {
    BoundaryGraph bg;
    bg.component_offset.assign(p.k + 1, 0);
    for (VertexId v = 0; v < reordered.num_vertices(); ++v) {
        if (p.boundary_flags[v]) {
            bg.global_of.push_back(v);
            ++bg.component_offset[p.assignment[v] + 1];
        }
    }
    for (std::uint32_t c = 0; c < p.k; ++c) {
        bg.component_offset[c + 1] += bg.component_offset[c];
    }

    // Boundary vertices come first within each component's contiguous range,
    // so boundary id = component's boundary base + offset inside the range.
    std::vector<std::size_t> vertex_base(p.k + 1, 0);
    for (std::uint32_t c = 0; c < p.k; ++c) {
        vertex_base[c + 1] = vertex_base[c] + p.component_members[c].size();
    }
    auto bg_id = [&](VertexId v) {
        const std::uint32_t c = p.assignment[v];
        return static_cast<VertexId>(bg.component_offset[c] + (v - vertex_base[c]));
    };

    std::vector<Edge> edges;
    for (VertexId v : bg.global_of) {
        for (const Neighbor& nb : reordered.neighbors(v)) {
            if (p.assignment[nb.to] != p.assignment[v] && v < nb.to) {
                edges.push_back({bg_id(v), bg_id(nb.to), nb.weight});
            }
        }
    }
    for (std::uint32_t c = 0; c < p.k; ++c) {
        const std::size_t bc = bg.component_offset[c + 1] - bg.component_offset[c];
        const VertexId base = static_cast<VertexId>(bg.component_offset[c]);
        for (std::size_t i = 0; i < bc; ++i) {
            for (std::size_t j = i + 1; j < bc; ++j) {
                const double d = tables[c](i, j);
                if (d < kUnreachable) {
                    edges.push_back({static_cast<VertexId>(base + i),
                                     static_cast<VertexId>(base + j), d});
                }
            }
        }
    }
    bg.graph = Graph(bg.global_of.size(), edges);
    return bg;
}

std::vector<Matrix> boundary_apsp(const BoundaryGraph& bg, const Partition& p,
                                  unsigned workers) {
    const std::size_t b = bg.global_of.size();
    std::vector<Matrix> tables(p.k);
    parallel_for(p.k, std::min<unsigned>(workers, p.k), [&](std::size_t c) {
        const std::size_t lo = bg.component_offset[c];
        const std::size_t hi = bg.component_offset[c + 1];
        Matrix t(hi - lo, b, kUnreachable);
        for (std::size_t i = lo; i < hi; ++i) {
            std::vector<double> row = dijkstra_sssp(bg.graph, static_cast<VertexId>(i));
            std::copy(row.begin(), row.end(), t.row(i - lo));
        }
        tables[c] = std::move(t);
    });
    return tables;
}

Oracle build_oracle(const Graph& g, std::uint32_t k, unsigned workers, std::uint64_t seed,
                    BuildStats* stats) {
    if (workers < 1) throw std::invalid_argument("build_oracle: workers must be at least 1");
    const unsigned pool = std::min<unsigned>(workers, std::max<std::uint32_t>(k, 1));
    BuildStats local;

    auto t0 = Clock::now();
    Partition original_part = partition_graph(g, k, seed);
    auto [rg, part] = reorder_vertices(g, original_part);
    local.partition_ms = ms_since(t0);

    Oracle o;
    o.n = g.num_vertices();
    o.k = k;
    o.permutation = std::move(original_part.permutation);
    o.inverse_permutation = std::move(original_part.inverse_permutation);
    o.component_offset = component_ranges(part, o.n);

    t0 = Clock::now();
    o.component_tables.resize(k);
    parallel_for(k, pool, [&](std::size_t c) {
        const std::size_t size = o.component_offset[c + 1] - o.component_offset[c];
        Graph sub = induced_range_subgraph(rg, o.component_offset[c], size);
        o.component_tables[c] = apsp_dense(sub);
    });
    local.component_apsp_ms = ms_since(t0);

    t0 = Clock::now();
    BoundaryGraph bg = build_boundary_graph(rg, part, o.component_tables);
    o.boundary_vertex = bg.global_of;
    o.boundary_offset = bg.component_offset;
    local.bg_edges = bg.graph.num_edges();
    o.boundary_tables = boundary_apsp(bg, part, pool);
    local.boundary_ms = ms_since(t0);

    o.partition = std::move(part);
    o.placement = place_components(k, 1);

    local.boundary_total = o.b();
    local.stored_entries = o.stored_entries();
    Placement build_placement = place_components(k, pool);
    std::vector<std::size_t> worker_entries(build_placement.p, 0);
    for (std::uint32_t c = 0; c < k; ++c) {
        worker_entries[build_placement.owner[c]] +=
            o.component_size(c) * o.component_size(c) + o.boundary_size(c) * o.b();
    }
    local.peak_table_entries_per_worker =
        *std::max_element(worker_entries.begin(), worker_entries.end());
    if (stats) *stats = local;
    return o;
}

}  // namespace psp
