#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <utility>
#include <vector>

#include "psp/generators.hpp"
#include "psp/graph.hpp"
#include "psp/oracle.hpp"
#include "psp/placement.hpp"
#include "psp/query.hpp"
#include "psp/shortest_paths.hpp"
#include "support/reference.hpp"

using namespace psp;

namespace {

Graph cycle8_with_heavy_edge() {
    std::vector<Edge> edges;
    for (VertexId v = 0; v + 1 < 8; ++v) edges.push_back({v, static_cast<VertexId>(v + 1), 1.0});
    edges.push_back({0, 7, 1.0});
    edges[3].weight = 10.0;  // 3-4
    return Graph(8, edges);
}

}  // namespace

TEST_CASE("cross-component query on the 2x3 grid") {
    Graph g = generate_grid(2, 3, WeightModel::unit(), 0);
    Oracle o = build_oracle(g, 2, 1, 0);

    const QueryResult r = query(o, 0, 5);
    CHECK(r.distance == 3.0);
    CHECK_FALSE(r.stats.same_component);
    CHECK(r.stats.boundary_size_1 == 2);
    CHECK(r.stats.boundary_size_2 == 2);
    CHECK(r.stats.minplus_ops == 6);  // 2*2 + 2
    CHECK(r.stats.transfer_entries == 0);  // single worker owns everything

    SUBCASE("all 36 ordered pairs match the reference bitwise") {
        const Matrix truth = ref::apsp(g);
        for (VertexId u = 0; u < 6; ++u) {
            for (VertexId v = 0; v < 6; ++v) {
                CHECK(query(o, u, v).distance == truth(u, v));
            }
        }
    }
    SUBCASE("source-side stitch exposes its intermediate vector") {
        const detail::Stitch s = detail::stitch_source_side(o, 0, 5);
        CHECK(s.c1 == 0);
        CHECK(s.c2 == 1);
        CHECK(s.b1n == 2);
        CHECK(s.b2n == 2);
        // Best distance from 0 through C0's boundary to each of C1's
        // boundary vertices is 2 either way.
        CHECK(s.through == std::vector<double>{2.0, 2.0});
        const std::vector<double> col2{1.0, 1.0};
        CHECK(detail::combine_target_column(o, s, col2) == 3.0);
    }
}

TEST_CASE("same-component queries take escape routes when cheaper") {
    // Partition (seed 4) splits the cycle into arcs {0,1,6,7} and {2,3,4,5};
    // inside the second arc the 3-4 edge costs 10, so 2 -> 5 is cheaper the
    // long way around: 2-1-0-7-6-5 = 5.
    Graph g = cycle8_with_heavy_edge();
    Oracle o = build_oracle(g, 2, 1, 4);
    auto comp = [&](VertexId v) { return o.partition.assignment[o.permutation[v]]; };
    REQUIRE(comp(2) == comp(5));
    REQUIRE(comp(2) == comp(3));
    REQUIRE(comp(2) == comp(4));
    REQUIRE(comp(2) != comp(1));

    const QueryResult r = query(o, 2, 5);
    CHECK(r.distance == 5.0);
    CHECK(r.stats.same_component);

    const QueryResult self = query(o, 3, 3);
    CHECK(self.distance == 0.0);

    const Matrix truth = ref::apsp(g);
    for (VertexId u = 0; u < 8; ++u) {
        for (VertexId v = 0; v < 8; ++v) {
            CHECK(query(o, u, v).distance == truth(u, v));
        }
    }
}

TEST_CASE("cost accounting follows the boundary sizes") {
    Graph g = generate_grid(16, 16, WeightModel::unit(), 0);
    Oracle o = build_oracle(g, 4, 1, 0);

    for (const auto& [u, v] : ref::random_pairs(256, 300, 5)) {
        const QueryResult r = query(o, u, v);
        const std::uint32_t c1 = o.partition.assignment[o.permutation[u]];
        const std::uint32_t c2 = o.partition.assignment[o.permutation[v]];
        CHECK(r.stats.same_component == (c1 == c2));
        CHECK(r.stats.boundary_size_1 == o.partition.boundary_count(c1));
        CHECK(r.stats.boundary_size_2 == o.partition.boundary_count(c2));
        CHECK(r.stats.minplus_ops ==
              r.stats.boundary_size_1 * r.stats.boundary_size_2 + r.stats.boundary_size_2);
        CHECK(r.stats.transfer_entries == 0);
    }
}

TEST_CASE("transfer entries appear only across owners") {
    Graph g = generate_grid(16, 16, WeightModel::unit(), 0);
    Oracle o = build_oracle(g, 4, 1, 0);
    o.placement = place_components(4, 2);

    for (const auto& [u, v] : ref::random_pairs(256, 200, 6)) {
        const QueryResult r = query(o, u, v);
        const std::uint32_t c1 = o.partition.assignment[o.permutation[u]];
        const std::uint32_t c2 = o.partition.assignment[o.permutation[v]];
        if (o.placement.owner[c1] != o.placement.owner[c2]) {
            CHECK(r.stats.transfer_entries == r.stats.boundary_size_2);
        } else {
            CHECK(r.stats.transfer_entries == 0);
        }
    }
}

TEST_CASE("parallel inner scan and batches agree with the sequential query") {
    Graph g = generate_grid(16, 16, WeightModel::uniform(0.5, 2.0), 9);
    Oracle o = build_oracle(g, 8, 2, 0);

    const auto pairs = ref::random_pairs(256, 200, 7);
    for (const auto& [u, v] : pairs) {
        const QueryResult want = query(o, u, v);
        CHECK(query_parallel_inner(o, u, v, 1) == want);
        CHECK(query_parallel_inner(o, u, v, 2) == want);
        CHECK(query_parallel_inner(o, u, v, 8) == want);
    }

    const std::vector<QueryResult> batch = batch_query(o, pairs, 4);
    REQUIRE(batch.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(batch[i] == query(o, pairs[i].first, pairs[i].second));
    }
}

TEST_CASE("undirected symmetry") {
    Graph g = generate_triangulated_grid(9, 9, WeightModel::uniform(1.0, 3.0), 4);
    Oracle o = build_oracle(g, 6, 1, 0);
    for (const auto& [u, v] : ref::random_pairs(81, 150, 8)) {
        const QueryResult a = query(o, u, v);
        const QueryResult b = query(o, v, u);
        CHECK(a.distance == b.distance);
        CHECK(a.stats.boundary_size_1 == b.stats.boundary_size_2);
    }
}

TEST_CASE("unreachable pairs come back infinite with zero-width stitches") {
    // Two isolated vertices, one component each: no boundary anywhere.
    Graph g(2, std::vector<Edge>{});
    Oracle o = build_oracle(g, 2, 1, 0);
    const QueryResult r = query(o, 0, 1);
    CHECK(r.distance == kUnreachable);
    CHECK(r.stats.minplus_ops == 0);
    CHECK(r.stats.boundary_size_2 == 0);
    CHECK(query(o, 0, 0).distance == 0.0);
}

TEST_CASE("vertex ids outside the graph throw") {
    Graph g = generate_grid(2, 3, WeightModel::unit(), 0);
    Oracle o = build_oracle(g, 2, 1, 0);
    CHECK_THROWS_AS(query(o, 0, 6), std::invalid_argument);
    CHECK_THROWS_AS(query(o, 6, 0), std::invalid_argument);
    CHECK_THROWS_AS(query_parallel_inner(o, 9, 9, 2), std::invalid_argument);
}
