#include "psp/cluster.hpp"

#include <algorithm>
#include <future>
#include <ostream>
#include <stdexcept>
#include <variant>

namespace psp {

void TransferLedger::record(const TransferRecord& rec) {
    std::lock_guard lock(mutex_);
    records_.push_back(rec);
}

std::vector<TransferRecord> TransferLedger::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

std::size_t TransferLedger::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

std::size_t TransferLedger::total_entries() const {
    std::lock_guard lock(mutex_);
    std::size_t total = 0;
    for (const TransferRecord& rec : records_) total += rec.entries;
    return total;
}

std::size_t TransferLedger::total_bytes() const {
    std::lock_guard lock(mutex_);
    std::size_t total = 0;
    for (const TransferRecord& rec : records_) total += rec.bytes;
    return total;
}

void TransferLedger::write_csv(std::ostream& out) const {
    std::lock_guard lock(mutex_);
    out << "query_id,src_worker,dst_worker,entries,bytes\n";
    for (const TransferRecord& rec : records_) {
        out << rec.query_id << ',' << rec.src_worker << ',' << rec.dst_worker << ','
            << rec.entries << ',' << rec.bytes << '\n';
    }
}

RoutedQueryResult routed_query(const Oracle& o, const Placement& pl, VertexId v1, VertexId v2,
                               std::uint64_t query_id) {
    QueryResult qr = query(o, v1, v2);

    RoutedQueryResult r;
    const std::uint32_t c1 = o.partition.assignment[o.permutation[v1]];
    const std::uint32_t c2 = o.partition.assignment[o.permutation[v2]];
    r.executed_on = pl.owner[c1];
    r.column_owner = pl.owner[c2];
    const std::size_t b1n = qr.stats.boundary_size_1;
    const std::size_t b2n = qr.stats.boundary_size_2;
    qr.stats.transfer_entries = 0;
    if (r.executed_on != r.column_owner) {
        qr.stats.transfer_entries = b2n;
        r.transfer = TransferRecord{query_id, r.column_owner, r.executed_on, b2n, 8 * b2n};
    }
    r.result = qr;
    const double stitch = static_cast<double>(b1n * b2n);
    const double moved = static_cast<double>(qr.stats.transfer_entries);
    const double combine = static_cast<double>(b2n);
    r.overlap_cost = std::max(stitch, moved) + combine;
    r.serial_cost = stitch + moved + combine;
    return r;
}

namespace {

struct ExecQuery {
    std::uint64_t id;
    VertexId v1;
    VertexId v2;
    std::promise<void>* done;
};

struct ColumnRequest {
    std::uint32_t component;
    std::size_t local;
    std::size_t count;
    std::uint32_t reply_to;
};

struct ColumnReply {
    std::vector<double> values;
};

struct Shutdown {};

using Message = std::variant<ExecQuery, ColumnRequest, ColumnReply, Shutdown>;

}  // namespace

// Blocking single-consumer mailbox; producers are the coordinator and peer
// workers.
struct ClusterSim::Mailbox {
    std::mutex mutex;
    std::condition_variable ready;
    std::deque<Message> messages;
    // Slot the coordinator reads after the promise fires.
    ExecOutcome outcome;
    std::exception_ptr error;

    void push(Message m) {
        {
            std::lock_guard lock(mutex);
            messages.push_back(std::move(m));
        }
        ready.notify_one();
    }

    Message pop() {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return !messages.empty(); });
        Message m = std::move(messages.front());
        messages.pop_front();
        return m;
    }
};

ClusterSim::ClusterSim(const Oracle& o, Placement pl)
    : oracle_(o), placement_(std::move(pl)) {
    if (placement_.owner.size() != oracle_.k) {
        throw std::invalid_argument("ClusterSim: placement does not cover the oracle");
    }
    mailboxes_.reserve(placement_.p);
    for (std::uint32_t w = 0; w < placement_.p; ++w) {
        mailboxes_.push_back(std::make_unique<Mailbox>());
    }
    workers_.reserve(placement_.p);
    for (std::uint32_t w = 0; w < placement_.p; ++w) {
        workers_.emplace_back([this, w] { worker_main(w); });
    }
}

ClusterSim::~ClusterSim() {
    for (auto& box : mailboxes_) box->push(Shutdown{});
    for (auto& th : workers_) th.join();
}

void ClusterSim::worker_main(std::uint32_t self) {
    Mailbox& box = *mailboxes_[self];
    for (;;) {
        Message m = box.pop();
        if (std::holds_alternative<Shutdown>(m)) return;
        if (auto* req = std::get_if<ColumnRequest>(&m)) {
            const double* col = oracle_.component_tables[req->component].row(req->local);
            mailboxes_[req->reply_to]->push(
                ColumnReply{std::vector<double>(col, col + req->count)});
            continue;
        }
        auto& exec = std::get<ExecQuery>(m);
        try {
            box.outcome = execute(self, exec.id, exec.v1, exec.v2);
            box.error = nullptr;
        } catch (...) {
            box.error = std::current_exception();
        }
        exec.done->set_value();
    }
}

ClusterSim::ExecOutcome ClusterSim::execute(std::uint32_t self, std::uint64_t id, VertexId v1,
                                            VertexId v2) {
    detail::Stitch s = detail::stitch_source_side(oracle_, v1, v2);
    const std::uint32_t col_owner = placement_.owner[s.c2];

    ExecOutcome out;
    std::vector<double> col2;
    if (col_owner == self) {
        const double* col = oracle_.component_tables[s.c2].row(s.local2);
        col2.assign(col, col + s.b2n);
    } else {
        mailboxes_[col_owner]->push(ColumnRequest{s.c2, s.local2, s.b2n, self});
        // Only the reply can arrive while this worker blocks (one query in
        // flight), but serving stray requests keeps the loop safe.
        Mailbox& box = *mailboxes_[self];
        for (;;) {
            Message m = box.pop();
            if (auto* reply = std::get_if<ColumnReply>(&m)) {
                col2 = std::move(reply->values);
                break;
            }
            if (auto* req = std::get_if<ColumnRequest>(&m)) {
                const double* col = oracle_.component_tables[req->component].row(req->local);
                mailboxes_[req->reply_to]->push(
                    ColumnReply{std::vector<double>(col, col + req->count)});
            }
        }
        out.transfer = TransferRecord{id, col_owner, self, s.b2n, 8 * s.b2n};
    }

    out.result.distance = detail::combine_target_column(oracle_, s, col2);
    out.result.stats.minplus_ops = s.b1n * s.b2n + s.b2n;
    out.result.stats.boundary_size_1 = s.b1n;
    out.result.stats.boundary_size_2 = s.b2n;
    out.result.stats.same_component = (s.c1 == s.c2);
    out.result.stats.transfer_entries = out.transfer ? s.b2n : 0;
    return out;
}

QueryResult ClusterSim::run_query(VertexId v1, VertexId v2) {
    if (v1 >= oracle_.n || v2 >= oracle_.n) {
        throw std::invalid_argument("query: vertex id out of range");
    }
    const std::uint32_t c1 = oracle_.partition.assignment[oracle_.permutation[v1]];
    const std::uint32_t exec_worker = placement_.owner[c1];

    std::promise<void> done;
    std::future<void> fut = done.get_future();
    mailboxes_[exec_worker]->push(ExecQuery{next_query_id_++, v1, v2, &done});
    fut.wait();

    Mailbox& box = *mailboxes_[exec_worker];
    if (box.error) std::rethrow_exception(box.error);
    if (box.outcome.transfer) ledger_.record(*box.outcome.transfer);
    return box.outcome.result;
}

std::vector<QueryResult> ClusterSim::run_batch(
    std::span<const std::pair<VertexId, VertexId>> pairs) {
    std::vector<QueryResult> results;
    results.reserve(pairs.size());
    for (const auto& [v1, v2] : pairs) results.push_back(run_query(v1, v2));
    return results;
}

ScheduleProfile simulate_build_schedule(std::uint32_t k, std::uint32_t p,
                                        std::span<const double> component_costs,
                                        PlacementPolicy policy) {
    if (component_costs.size() != k) {
        throw std::invalid_argument("simulate_build_schedule: need one cost per component");
    }
    Placement pl = place_components(k, p, policy);
    ScheduleProfile profile;
    profile.worker_cost.assign(p, 0.0);
    double total = 0.0;
    for (std::uint32_t c = 0; c < k; ++c) {
        profile.worker_cost[pl.owner[c]] += component_costs[c];
        total += component_costs[c];
    }
    profile.makespan = *std::max_element(profile.worker_cost.begin(), profile.worker_cost.end());
    profile.mean_load = total / p;
    return profile;
}

}  // namespace psp
