#include "psp/query.hpp"

#include <algorithm>
#include <stdexcept>

#include "psp/parallel.hpp"

namespace psp {

namespace {

// Everything a query needs after id translation, valid while the oracle is
// alive. row1 and col2 are contiguous boundary-prefix slices: row1[i] =
// dist_C1(v1, i-th boundary vertex of C1) and col2[j] = dist_C2(v2, j-th
// boundary vertex of C2) (columns equal rows by symmetry).
struct QueryFrame {
    std::uint32_t c1;
    std::uint32_t c2;
    std::size_t local1;
    std::size_t local2;
    std::size_t b1n;
    std::size_t b2n;
    const double* row1;
    const Matrix* bt1;
    std::size_t bg2;
    const double* col2;
};

QueryFrame make_frame(const Oracle& o, VertexId v1, VertexId v2) {
    if (v1 >= o.n || v2 >= o.n) throw std::invalid_argument("query: vertex id out of range");
    QueryFrame f;
    const VertexId r1 = o.permutation[v1];
    const VertexId r2 = o.permutation[v2];
    f.c1 = o.partition.assignment[r1];
    f.c2 = o.partition.assignment[r2];
    f.local1 = r1 - o.component_offset[f.c1];
    f.local2 = r2 - o.component_offset[f.c2];
    f.b1n = o.boundary_size(f.c1);
    f.b2n = o.boundary_size(f.c2);
    f.row1 = o.component_tables[f.c1].row(f.local1);
    f.bt1 = &o.boundary_tables[f.c1];
    f.bg2 = o.boundary_offset[f.c2];
    f.col2 = o.component_tables[f.c2].row(f.local2);
    return f;
}

// through[j-lo] = min over b1 of dist_C1(v1,b1) + dist_BG(b1, j-th boundary
// vertex of C2), for j in [lo, hi).
void stitch_into(const QueryFrame& f, std::size_t lo, std::size_t hi, double* through) {
    std::fill(through, through + (hi - lo), kUnreachable);
    for (std::size_t b1 = 0; b1 < f.b1n; ++b1) {
        const double d1 = f.row1[b1];
        if (d1 == kUnreachable) continue;
        const double* bg_row = f.bt1->row(b1) + f.bg2;
        for (std::size_t j = lo; j < hi; ++j) {
            through[j - lo] = std::min(through[j - lo], d1 + bg_row[j]);
        }
    }
}

double stitch_range(const QueryFrame& f, std::size_t lo, std::size_t hi) {
    std::vector<double> through(hi - lo);
    stitch_into(f, lo, hi, through.data());
    return min_plus_combine({through.data(), hi - lo}, {f.col2 + lo, hi - lo});
}

QueryResult finish(const Oracle& o, const QueryFrame& f, double stitched) {
    QueryResult r;
    r.distance = stitched;
    if (f.c1 == f.c2) {
        r.distance = std::min(r.distance, o.component_tables[f.c1](f.local1, f.local2));
    }
    r.stats.minplus_ops = f.b1n * f.b2n + f.b2n;
    r.stats.boundary_size_1 = f.b1n;
    r.stats.boundary_size_2 = f.b2n;
    r.stats.same_component = (f.c1 == f.c2);
    if (o.placement.owner[f.c1] != o.placement.owner[f.c2]) {
        r.stats.transfer_entries = f.b2n;
    }
    return r;
}

}  // namespace

QueryResult query(const Oracle& o, VertexId v1, VertexId v2) {
    const QueryFrame f = make_frame(o, v1, v2);
    return finish(o, f, stitch_range(f, 0, f.b2n));
}

QueryResult query_parallel_inner(const Oracle& o, VertexId v1, VertexId v2, unsigned workers) {
    const QueryFrame f = make_frame(o, v1, v2);
    if (workers <= 1 || f.b2n <= 1) return finish(o, f, stitch_range(f, 0, f.b2n));

    const std::size_t blocks = std::min<std::size_t>(workers, f.b2n);
    std::vector<double> partial(blocks, kUnreachable);
    parallel_for(blocks, static_cast<unsigned>(blocks), [&](std::size_t i) {
        const std::size_t lo = f.b2n * i / blocks;
        const std::size_t hi = f.b2n * (i + 1) / blocks;
        partial[i] = stitch_range(f, lo, hi);
    });
    double stitched = kUnreachable;
    for (double d : partial) stitched = std::min(stitched, d);
    return finish(o, f, stitched);
}

std::vector<QueryResult> batch_query(const Oracle& o,
                                     std::span<const std::pair<VertexId, VertexId>> pairs,
                                     unsigned workers) {
    std::vector<QueryResult> results(pairs.size());
    parallel_for(pairs.size(), workers, [&](std::size_t i) {
        results[i] = query(o, pairs[i].first, pairs[i].second);
    });
    return results;
}

namespace detail {

Stitch stitch_source_side(const Oracle& o, VertexId v1, VertexId v2) {
    const QueryFrame f = make_frame(o, v1, v2);
    Stitch s{f.c1, f.c2, f.local1, f.local2, f.b1n, f.b2n, std::vector<double>(f.b2n)};
    stitch_into(f, 0, f.b2n, s.through.data());
    return s;
}

double combine_target_column(const Oracle& o, const Stitch& s, std::span<const double> col2) {
    double d = min_plus_combine(s.through, col2);
    if (s.c1 == s.c2) {
        d = std::min(d, o.component_tables[s.c1](s.local1, s.local2));
    }
    return d;
}

}  // namespace detail

}  // namespace psp
