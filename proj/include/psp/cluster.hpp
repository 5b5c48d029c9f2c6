#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "psp/oracle.hpp"
#include "psp/placement.hpp"
#include "psp/query.hpp"

namespace psp {

// One cross-worker column shipment: `entries` boundary-row values of the
// target's column, 8 bytes each.
struct TransferRecord {
    std::uint64_t query_id = 0;
    std::uint32_t src_worker = 0;
    std::uint32_t dst_worker = 0;
    std::size_t entries = 0;
    std::size_t bytes = 0;

    bool operator==(const TransferRecord&) const = default;
};

// Thread-safe append-only log of cross-worker transfers. Queries whose two
// components share an owner produce no record.
class TransferLedger {
public:
    void record(const TransferRecord& rec);

    std::vector<TransferRecord> records() const;
    std::size_t size() const;
    std::size_t total_entries() const;
    std::size_t total_bytes() const;

    // "query_id,src_worker,dst_worker,entries,bytes", one row per record.
    void write_csv(std::ostream& out) const;

private:
    mutable std::mutex mutex_;
    std::vector<TransferRecord> records_;
};

// Result of a placement-routed query plus its modeled latency in operation
// units: serial_cost charges stitching, transfer, and the final combine one
// after another; overlap_cost lets the transfer ride alongside stitching.
struct RoutedQueryResult {
    QueryResult result;
    std::uint32_t executed_on = 0;
    std::uint32_t column_owner = 0;
    std::optional<TransferRecord> transfer;
    double overlap_cost = 0.0;  // max(B1*B2, transfer_entries) + B2
    double serial_cost = 0.0;   // B1*B2 + transfer_entries + B2

    bool operator==(const RoutedQueryResult&) const = default;
};

// Executes the query at owner(C1) under pl; the distance always equals
// query(o, v1, v2). A transfer record is attached iff the two components
// have different owners.
RoutedQueryResult routed_query(const Oracle& o, const Placement& pl, VertexId v1, VertexId v2,
                               std::uint64_t query_id = 0);

// In-process worker simulation. Each worker thread exclusively reads the
// tables of the components it owns; a query runs at owner(C1) and obtains
// the target column through a request/reply message when owner(C2) differs.
// run_query and run_batch are coordinator-side and must not be called
// concurrently; one query is in flight at a time.
class ClusterSim {
public:
    ClusterSim(const Oracle& o, Placement pl);
    ~ClusterSim();

    ClusterSim(const ClusterSim&) = delete;
    ClusterSim& operator=(const ClusterSim&) = delete;

    QueryResult run_query(VertexId v1, VertexId v2);
    std::vector<QueryResult> run_batch(std::span<const std::pair<VertexId, VertexId>> pairs);

    const TransferLedger& ledger() const { return ledger_; }
    const Placement& placement() const { return placement_; }

private:
    struct Mailbox;
    struct ExecOutcome {
        QueryResult result;
        std::optional<TransferRecord> transfer;
    };

    void worker_main(std::uint32_t self);
    ExecOutcome execute(std::uint32_t self, std::uint64_t id, VertexId v1, VertexId v2);

    const Oracle& oracle_;
    Placement placement_;
    TransferLedger ledger_;
    std::vector<std::unique_ptr<Mailbox>> mailboxes_;
    std::vector<std::thread> workers_;
    std::uint64_t next_query_id_ = 0;
};

// Phase-3 style imbalance study: component build costs summed per owning
// worker under the given placement policy.
struct ScheduleProfile {
    std::vector<double> worker_cost;
    double makespan = 0.0;
    double mean_load = 0.0;

    bool operator==(const ScheduleProfile&) const = default;
};

ScheduleProfile simulate_build_schedule(std::uint32_t k, std::uint32_t p,
                                        std::span<const double> component_costs,
                                        PlacementPolicy policy = PlacementPolicy::RoundRobin);

}  // namespace psp
