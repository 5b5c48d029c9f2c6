#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "psp/oracle.hpp"

namespace psp {

// Cost accounting for one query. minplus_ops counts distance additions:
// |B(C1)|*|B(C2)| for stitching source boundary to target boundary plus
// |B(C2)| for descending to the target vertex. transfer_entries is the
// boundary-row slice of the target's column that would cross workers under
// the oracle's placement: |B(C2)| when owner(C1) != owner(C2), else 0.
struct QueryStats {
    std::size_t minplus_ops = 0;
    std::size_t boundary_size_1 = 0;
    std::size_t boundary_size_2 = 0;
    std::size_t transfer_entries = 0;
    bool same_component = false;

    bool operator==(const QueryStats&) const = default;
};

struct QueryResult {
    double distance = kUnreachable;
    QueryStats stats;

    bool operator==(const QueryResult&) const = default;
};

// Exact distance between two vertices given in original (pre-reordering)
// ids. Throws std::invalid_argument if either id is out of range.
QueryResult query(const Oracle& o, VertexId v1, VertexId v2);

// Same result as query; the scan over the target's boundary vertices is
// split into static blocks across up to `workers` threads.
QueryResult query_parallel_inner(const Oracle& o, VertexId v1, VertexId v2, unsigned workers);

// One result per pair, in input order, computed across up to `workers`
// threads. Identical to calling query sequentially.
std::vector<QueryResult> batch_query(const Oracle& o,
                                     std::span<const std::pair<VertexId, VertexId>> pairs,
                                     unsigned workers);

namespace detail {

// The source-side half of a query: id translation plus, for every boundary
// vertex b2 of the target component, the best distance from v1 through C1's
// boundary. Reads only C1's tables, which is what lets the cluster runtime
// run it at C1's owner before the target column arrives.
struct Stitch {
    std::uint32_t c1;
    std::uint32_t c2;
    std::size_t local1;
    std::size_t local2;
    std::size_t b1n;
    std::size_t b2n;
    std::vector<double> through;
};

Stitch stitch_source_side(const Oracle& o, VertexId v1, VertexId v2);

// The target-side half: min over b2 of through[b2] + col2[b2], then the
// same-component correction. col2 is the boundary-row prefix of the target's
// column, length b2n.
double combine_target_column(const Oracle& o, const Stitch& s, std::span<const double> col2);

}  // namespace detail

}  // namespace psp
