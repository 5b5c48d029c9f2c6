#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace psp {

using VertexId = std::uint32_t;

// Unreachable-distance sentinel. Compares greater than every finite
// distance and absorbs addition, which is exactly IEEE +infinity.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// One undirected edge, listed once with u != v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    double weight = 0.0;

    bool operator==(const Edge&) const = default;
};

struct Neighbor {
    VertexId to;
    double weight;

    bool operator==(const Neighbor&) const = default;
};

// Immutable weighted undirected graph in compact adjacency (CSR) form.
//
// Invariants held by every validated instance:
//   - vertex ids are dense 0..n-1
//   - weights are finite and nonnegative
//   - no self-loops, at most one edge per unordered pair
//   - adjacency is symmetric and each list is sorted by neighbor id
//
// Instances are immutable after construction and safe to share across
// threads for concurrent reads.
class Graph {
public:
    Graph() = default;

    // Builds from undirected edges, each listed exactly once.
    // Throws GraphInvariantError on any invariant violation.
    Graph(std::size_t n, std::span<const Edge> edges);

    // Adopts a prebuilt CSR without validation. Callers must guarantee the
    // class invariants themselves; validate() can audit the result.
    static Graph from_raw(std::size_t n, std::vector<std::size_t> offsets,
                          std::vector<Neighbor> adjacency);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return adjacency_.size() / 2; }

    std::span<const Neighbor> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

    // Weight of edge (u,v), or kUnreachable if the edge is absent.
    double edge_weight(VertexId u, VertexId v) const;

    // Edges with u < v, sorted lexicographically.
    std::vector<Edge> edge_list() const;

    bool operator==(const Graph&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> offsets_;   // n+1 entries
    std::vector<Neighbor> adjacency_;    // 2m entries, sorted per vertex
};

enum class IssueKind {
    NegativeWeight,
    NonFiniteWeight,
    SelfLoop,
    DuplicateEdge,
    AsymmetricPair,
};

struct ValidationIssue {
    IssueKind kind;
    VertexId u = 0;
    VertexId v = 0;

    bool operator==(const ValidationIssue&) const = default;
};

// ok means no structural violations. Connectivity is reported separately:
// disconnected graphs are valid and yield unreachable distances.
struct ValidationReport {
    bool ok = true;
    bool connected = true;
    std::vector<ValidationIssue> issues;
};

ValidationReport validate(const Graph& g);

}  // namespace psp
