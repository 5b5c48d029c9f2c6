#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "psp/cluster.hpp"
#include "psp/generators.hpp"
#include "psp/graph.hpp"
#include "psp/oracle.hpp"
#include "psp/placement.hpp"
#include "psp/query.hpp"
#include "support/reference.hpp"

using namespace psp;

TEST_CASE("round-robin placement stripes components") {
    const Placement pl = place_components(8, 3);
    CHECK(pl.p == 3);
    CHECK(pl.owner == std::vector<std::uint32_t>{0, 1, 2, 0, 1, 2, 0, 1});
    CHECK(pl.components_of ==
          std::vector<std::vector<std::uint32_t>>{{0, 3, 6}, {1, 4, 7}, {2, 5}});
}

TEST_CASE("pairs-per-gpu placement blocks components") {
    const Placement four = place_components(8, 4, PlacementPolicy::PairsPerGpu);
    CHECK(four.owner == std::vector<std::uint32_t>{0, 0, 1, 1, 2, 2, 3, 3});

    const Placement uneven = place_components(7, 3, PlacementPolicy::PairsPerGpu);
    CHECK(uneven.owner == std::vector<std::uint32_t>{0, 0, 0, 1, 1, 2, 2});
}

TEST_CASE("placement validates worker counts") {
    CHECK(place_components(4, 1).owner == std::vector<std::uint32_t>{0, 0, 0, 0});
    CHECK_THROWS_AS(place_components(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(place_components(4, 5), std::invalid_argument);
}

TEST_CASE("routed query ships the target column across owners") {
    Graph g = generate_grid(2, 3, WeightModel::unit(), 0);
    Oracle o = build_oracle(g, 2, 1, 0);
    const Placement pl = place_components(2, 2);

    const RoutedQueryResult r = routed_query(o, pl, 0, 5, 17);
    CHECK(r.result.distance == 3.0);
    CHECK(r.executed_on == 0);
    CHECK(r.column_owner == 1);
    REQUIRE(r.transfer.has_value());
    CHECK(*r.transfer == TransferRecord{17, 1, 0, 2, 16});
    CHECK(r.result.stats.transfer_entries == 2);
    CHECK(r.serial_cost == 2 * 2 + 2 + 2);
    CHECK(r.overlap_cost == 2 * 2 + 2);  // transfer hides behind stitching

    SUBCASE("same owner means no transfer") {
        const RoutedQueryResult local = routed_query(o, place_components(2, 1), 0, 5);
        CHECK_FALSE(local.transfer.has_value());
        CHECK(local.result.stats.transfer_entries == 0);
        CHECK(local.result.distance == 3.0);
        CHECK(local.serial_cost == 2 * 2 + 2);
    }
}

TEST_CASE("ledger accumulates and prints csv") {
    TransferLedger ledger;
    ledger.record({1, 0, 1, 3, 24});
    ledger.record({2, 1, 0, 5, 40});
    CHECK(ledger.size() == 2);
    CHECK(ledger.total_entries() == 8);
    CHECK(ledger.total_bytes() == 64);

    std::ostringstream out;
    ledger.write_csv(out);
    CHECK(out.str() ==
          "query_id,src_worker,dst_worker,entries,bytes\n"
          "1,0,1,3,24\n"
          "2,1,0,5,40\n");
}

TEST_CASE("cluster simulation reproduces plain queries and accounts bytes") {
    Graph g = generate_grid(16, 16, WeightModel::uniform(0.5, 2.0), 11);
    Oracle o = build_oracle(g, 8, 2, 0);
    const Placement pl = place_components(8, 4);
    o.placement = pl;

    const auto pairs = ref::random_pairs(256, 400, 3);
    const std::vector<QueryResult> want = batch_query(o, pairs, 1);

    ClusterSim sim(o, pl);
    const std::vector<QueryResult> got = sim.run_batch(pairs);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);

    // Ledger identity: 8 bytes per boundary entry of the target component,
    // summed over exactly the owner-crossing queries.
    std::size_t expect_bytes = 0;
    std::size_t expect_crossings = 0;
    for (const auto& [u, v] : pairs) {
        const std::uint32_t c1 = o.partition.assignment[o.permutation[u]];
        const std::uint32_t c2 = o.partition.assignment[o.permutation[v]];
        if (pl.owner[c1] != pl.owner[c2]) {
            expect_bytes += 8 * o.boundary_size(c2);
            ++expect_crossings;
        }
    }
    CHECK(sim.ledger().size() == expect_crossings);
    CHECK(sim.ledger().total_bytes() == expect_bytes);
    CHECK(expect_crossings > 0);

    // Every record carries 8 bytes per entry between distinct workers.
    for (const TransferRecord& rec : sim.ledger().records()) {
        CHECK(rec.bytes == 8 * rec.entries);
        CHECK(rec.src_worker != rec.dst_worker);
    }

    SUBCASE("single queries keep accumulating the same ledger") {
        const std::size_t before = sim.ledger().size();
        const QueryResult one = sim.run_query(0, 255);
        CHECK(one == query(o, 0, 255));
        CHECK(sim.ledger().size() >= before);
    }
}

TEST_CASE("one worker owns everything, so nothing crosses") {
    Graph g = generate_grid(8, 8, WeightModel::unit(), 0);
    Oracle o = build_oracle(g, 4, 1, 0);
    ClusterSim sim(o, place_components(4, 1));
    const auto pairs = ref::random_pairs(64, 200, 9);
    const std::vector<QueryResult> got = sim.run_batch(pairs);
    const std::vector<QueryResult> want = batch_query(o, pairs, 2);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
    CHECK(sim.ledger().size() == 0);
    CHECK(sim.ledger().total_bytes() == 0);
}

TEST_CASE("build schedule sums component costs per owner") {
    const std::vector<double> costs{5, 5, 1, 1, 1, 1};

    const ScheduleProfile rr = simulate_build_schedule(6, 2, costs);
    CHECK(rr.worker_cost == std::vector<double>{7, 7});
    CHECK(rr.makespan == 7);
    CHECK(rr.mean_load == 7);

    const ScheduleProfile blocks =
        simulate_build_schedule(6, 2, costs, PlacementPolicy::PairsPerGpu);
    CHECK(blocks.worker_cost == std::vector<double>{11, 3});
    CHECK(blocks.makespan == 11);
    CHECK(blocks.mean_load == 7);

    CHECK_THROWS_AS(simulate_build_schedule(6, 2, std::vector<double>(5, 1.0)),
                    std::invalid_argument);
}
