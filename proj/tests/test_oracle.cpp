#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "psp/errors.hpp"
#include "psp/generators.hpp"
#include "psp/graph.hpp"
#include "psp/oracle.hpp"
#include "psp/oracle_io.hpp"
#include "psp/partition.hpp"
#include "psp/shortest_paths.hpp"
#include "support/reference.hpp"

using namespace psp;

namespace {

std::vector<double> matrix_rows(const Matrix& m) { return m.data(); }

}  // namespace

TEST_CASE("2x3 grid oracle, every table spelled out") {
    // Partition (seed 0): C0 = {0,1,3}, C1 = {2,4,5}; boundary {1,3} and
    // {2,4}. Reordered ids: 1,3,0 then 2,4,5.
    Graph g = generate_grid(2, 3, WeightModel::unit(), 0);
    BuildStats stats;
    Oracle o = build_oracle(g, 2, 1, 0, &stats);

    CHECK(o.n == 6);
    CHECK(o.k == 2);
    CHECK(o.permutation == std::vector<VertexId>{2, 0, 3, 1, 4, 5});
    CHECK(o.component_offset == std::vector<std::size_t>{0, 3, 6});
    CHECK(o.boundary_offset == std::vector<std::size_t>{0, 2, 4});
    CHECK(o.boundary_vertex == std::vector<VertexId>{0, 1, 3, 4});
    CHECK(o.b() == 4);
    CHECK(o.component_size(0) == 3);
    CHECK(o.boundary_size(1) == 2);

    // Local ids are boundary-first: C0 = (1, 3, 0), C1 = (2, 4, 5).
    // Both components are paths of two unit edges meeting at the interior
    // vertex, so the same 3x3 table comes out twice.
    const std::vector<double> path_table{0, 2, 1, 2, 0, 1, 1, 1, 0};
    REQUIRE(o.component_tables.size() == 2);
    CHECK(matrix_rows(o.component_tables[0]) == path_table);
    CHECK(matrix_rows(o.component_tables[1]) == path_table);

    // Boundary-graph rows: cross edges (1,2), (1,4), (3,4) plus one clique
    // edge of weight 2 inside each component.
    REQUIRE(o.boundary_tables.size() == 2);
    CHECK(o.boundary_tables[0].rows() == 2);
    CHECK(o.boundary_tables[0].cols() == 4);
    CHECK(matrix_rows(o.boundary_tables[0]) == std::vector<double>{0, 2, 1, 1,
                                                                   2, 0, 3, 1});
    CHECK(matrix_rows(o.boundary_tables[1]) == std::vector<double>{1, 3, 0, 2,
                                                                   1, 1, 2, 0});

    CHECK(o.stored_entries() == 34);  // 9 + 9 + 4 * 4
    CHECK(stats.stored_entries == 34);
    CHECK(stats.boundary_total == 4);
    CHECK(stats.bg_edges == 5);
    CHECK(stats.peak_table_entries_per_worker == 34);

    // Boundary rows reproduce full-graph distances (the whole point).
    for (std::size_t bi = 0; bi < o.b(); ++bi) {
        const std::uint32_t c = o.partition.assignment[o.boundary_vertex[bi]];
        const double* row = o.boundary_tables[c].row(bi - o.boundary_offset[c]);
        const std::vector<double> truth =
            dijkstra_sssp(g, o.inverse_permutation[o.boundary_vertex[bi]]);
        for (std::size_t bj = 0; bj < o.b(); ++bj) {
            CHECK(row[bj] == truth[o.inverse_permutation[o.boundary_vertex[bj]]]);
        }
    }
}

TEST_CASE("k = 1 stores one full apsp table and no boundary") {
    Graph g = generate_grid(2, 3, WeightModel::unit(), 0);
    Oracle o = build_oracle(g, 1, 1, 0);
    CHECK(o.b() == 0);
    CHECK(o.stored_entries() == 36);
    CHECK(o.boundary_tables[0].rows() == 0);
    CHECK(matrix_rows(o.component_tables[0]) == matrix_rows(ref::apsp(g)));
}

TEST_CASE("clique edges are omitted for pairs their component cannot reach") {
    // Path 0-1-2 with the ends forced into one component: inside C0 the two
    // ends are disconnected, so the boundary graph gets no clique edge and
    // must route through vertex 1 instead of storing an infinite weight.
    Graph g(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
    Partition p = make_partition(g, 2, {0, 1, 0});
    auto [rg, rp] = reorder_vertices(g, p);

    std::vector<Matrix> tables(2);
    tables[0] = Matrix(2, 2, kUnreachable);
    tables[0](0, 0) = tables[0](1, 1) = 0.0;
    tables[1] = Matrix(1, 1, 0.0);

    BoundaryGraph bg = build_boundary_graph(rg, rp, tables);
    CHECK(bg.global_of == std::vector<VertexId>{0, 1, 2});
    CHECK(bg.component_offset == std::vector<std::size_t>{0, 2, 3});
    CHECK(bg.graph.num_edges() == 2);
    CHECK(bg.graph.edge_weight(0, 1) == kUnreachable);  // omitted clique pair

    const std::vector<Matrix> bt = boundary_apsp(bg, rp, 1);
    CHECK(matrix_rows(bt[0]) == std::vector<double>{0, 2, 1, 2, 0, 1});
    CHECK(matrix_rows(bt[1]) == std::vector<double>{1, 1, 0});
}

TEST_CASE("disconnected components yield an empty boundary graph") {
    Graph g(8, std::vector<Edge>{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1},
                                 {4, 5, 1}, {5, 6, 1}, {6, 7, 1}, {4, 7, 1}});
    BuildStats stats;
    Oracle o = build_oracle(g, 2, 1, 0, &stats);
    CHECK(o.b() == 0);
    CHECK(stats.bg_edges == 0);
    CHECK(o.stored_entries() == 32);
}

TEST_CASE("boundary rows equal full-graph distances across families") {
    struct Case {
        Graph g;
        std::uint32_t k;
    };
    const Case cases[] = {
        {generate_grid(10, 10, WeightModel::unit(), 0), 2},
        {generate_grid(10, 10, WeightModel::unit(), 0), 4},
        {generate_grid(10, 10, WeightModel::unit(), 0), 8},
        {generate_triangulated_grid(9, 10, WeightModel::uniform(0.5, 3.0), 5), 6},
    };
    for (const Case& c : cases) {
        Oracle o = build_oracle(c.g, c.k, 2, 0);
        std::size_t violations = 0;
        for (std::size_t bi = 0; bi < o.b(); ++bi) {
            const std::uint32_t comp = o.partition.assignment[o.boundary_vertex[bi]];
            const double* row = o.boundary_tables[comp].row(bi - o.boundary_offset[comp]);
            const std::vector<double> truth =
                dijkstra_sssp(c.g, o.inverse_permutation[o.boundary_vertex[bi]]);
            for (std::size_t bj = 0; bj < o.b(); ++bj) {
                if (row[bj] != truth[o.inverse_permutation[o.boundary_vertex[bj]]]) ++violations;
            }
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("worker count changes nothing but the wall clock") {
    Graph g = generate_grid(16, 16, WeightModel::uniform(0.5, 2.0), 21);
    Oracle one = build_oracle(g, 7, 1, 3);
    Oracle four = build_oracle(g, 7, 4, 3);
    Oracle eight = build_oracle(g, 7, 8, 3);
    CHECK(one.same_data(four));
    CHECK(one.same_data(eight));
    CHECK(serialize_oracle(one) == serialize_oracle(four));
    CHECK(serialize_oracle(one) == serialize_oracle(eight));
}

TEST_CASE("build rejects out-of-range k") {
    Graph g = generate_grid(2, 3, WeightModel::unit(), 0);
    CHECK_THROWS_AS(build_oracle(g, 0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_oracle(g, 7, 1, 0), std::invalid_argument);
}

TEST_CASE("save / load round trip is bit identical") {
    Graph g = generate_triangulated_grid(8, 8, WeightModel::uniform(1.0, 4.0), 2);
    Oracle o = build_oracle(g, 5, 2, 0);

    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "psp_oracle_roundtrip.bin";
    save_oracle(o, path.string());
    Oracle loaded = load_oracle(path.string());
    CHECK(loaded.same_data(o));
    CHECK(serialize_oracle(loaded) == serialize_oracle(o));

    // Loading leaves placement at the single-worker default.
    CHECK(loaded.placement.p == 1);

    save_oracle(loaded, path.string());
    Oracle again = load_oracle(path.string());
    CHECK(serialize_oracle(again) == serialize_oracle(o));
    std::remove(path.string().c_str());
}

TEST_CASE("reader rejects damaged images") {
    Graph g = generate_grid(4, 4, WeightModel::unit(), 0);
    const std::string image = serialize_oracle(build_oracle(g, 2, 1, 1));

    auto read_image = [](std::string bytes) {
        std::istringstream in(std::move(bytes));
        return read_oracle(in, "image");
    };

    SUBCASE("intact image loads") {
        CHECK(read_image(image).n == 16);
    }
    SUBCASE("flipped payload byte") {
        std::string bad = image;
        bad[bad.size() / 2] ^= 0x01;
        CHECK_THROWS_AS(read_image(bad), ChecksumError);
    }
    SUBCASE("flipped checksum byte") {
        std::string bad = image;
        bad.back() ^= 0x01;
        CHECK_THROWS_AS(read_image(bad), ChecksumError);
    }
    SUBCASE("wrong magic") {
        std::string bad = image;
        bad[0] = 'X';
        CHECK_THROWS_AS(read_image(bad), FormatVersionError);
    }
    SUBCASE("unsupported version") {
        std::string bad = image;
        bad[4] = 9;
        CHECK_THROWS_AS(read_image(bad), FormatVersionError);
    }
    SUBCASE("truncation") {
        CHECK_THROWS_AS(read_image(image.substr(0, image.size() - 1)), IoError);
        CHECK_THROWS_AS(read_image(image.substr(0, 10)), IoError);
        CHECK_THROWS_AS(read_image(""), IoError);
    }
    SUBCASE("trailing data") {
        CHECK_THROWS_AS(read_image(image + "x"), IoError);
    }
}

TEST_CASE("missing file raises io error") {
    CHECK_THROWS_AS(load_oracle("/nonexistent/psp_oracle.bin"), IoError);
}
