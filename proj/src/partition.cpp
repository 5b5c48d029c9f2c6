#include "psp/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

namespace psp {

namespace {

constexpr std::uint32_t kUnassigned = 0xffffffffu;
constexpr int kMaxRefineSweeps = 10;
constexpr int kRecenterRounds = 12;
constexpr int kRestarts = 8;
constexpr std::size_t kSeedCandidates = 8;

// Boundary status of u under `assignment`, with vertex `moved` treated as
// belonging to `moved_to`.
bool is_boundary_with_move(const Graph& g, std::span<const std::uint32_t> assignment,
                           VertexId u, VertexId moved, std::uint32_t moved_to) {
    const std::uint32_t cu = (u == moved) ? moved_to : assignment[u];
    for (const Neighbor& nb : g.neighbors(u)) {
        const std::uint32_t cv = (nb.to == moved) ? moved_to : assignment[nb.to];
        if (cv != cu) return true;
    }
    return false;
}

struct GrowResult {
    std::vector<std::uint32_t> assignment;  // kUnassigned where no seed reaches
    std::vector<std::uint32_t> hop;         // BFS level, ~0u where unreached
};

// Uncapped multi-source BFS by hop count: every vertex joins the component
// of the nearest seed. Frontiers are processed in ascending vertex id, so a
// hop tie goes to the smallest-id claimer.
GrowResult voronoi_grow(const Graph& g, std::span<const VertexId> seeds) {
    const std::size_t n = g.num_vertices();
    GrowResult r{std::vector<std::uint32_t>(n, kUnassigned),
                 std::vector<std::uint32_t>(n, kUnassigned)};
    std::vector<VertexId> frontier, next;
    for (std::uint32_t c = 0; c < seeds.size(); ++c) {
        r.assignment[seeds[c]] = c;
        r.hop[seeds[c]] = 0;
        frontier.push_back(seeds[c]);
    }
    std::sort(frontier.begin(), frontier.end());

    std::vector<std::uint32_t> claimed(n, kUnassigned);
    std::uint32_t round = 0;
    while (!frontier.empty()) {
        ++round;
        next.clear();
        for (VertexId u : frontier) {
            for (const Neighbor& nb : g.neighbors(u)) {
                if (r.assignment[nb.to] != kUnassigned || claimed[nb.to] != kUnassigned) continue;
                claimed[nb.to] = r.assignment[u];
                next.push_back(nb.to);
            }
        }
        for (VertexId v : next) {
            r.assignment[v] = claimed[v];
            r.hop[v] = round;
        }
        std::sort(next.begin(), next.end());
        frontier.swap(next);
    }
    return r;
}

// Most interior vertex of each region: the last one reached by a BFS from
// the region's boundary, ties to the smallest id. Regions without boundary
// (isolated or k=1) keep their previous seed.
std::vector<VertexId> recenter(const Graph& g, std::span<const std::uint32_t> assignment,
                               std::span<const VertexId> old_seeds) {
    const std::size_t n = g.num_vertices();
    std::vector<VertexId> seeds(old_seeds.begin(), old_seeds.end());
    std::vector<std::uint8_t> flags = compute_boundary(g, assignment);

    std::vector<std::uint32_t> best_hop(seeds.size(), 0);
    std::vector<VertexId> best(seeds.size(), kUnassigned);
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<VertexId> frontier, next;
    for (VertexId v = 0; v < n; ++v) {
        if (flags[v]) {
            visited[v] = 1;
            frontier.push_back(v);
            if (best[assignment[v]] == kUnassigned) best[assignment[v]] = v;
        }
    }
    std::uint32_t round = 0;
    while (!frontier.empty()) {
        ++round;
        next.clear();
        for (VertexId u : frontier) {
            for (const Neighbor& nb : g.neighbors(u)) {
                if (visited[nb.to] || assignment[nb.to] != assignment[u]) continue;
                visited[nb.to] = 1;
                next.push_back(nb.to);
            }
        }
        std::sort(next.begin(), next.end());
        for (VertexId v : next) {
            const std::uint32_t c = assignment[v];
            if (round > best_hop[c]) {
                best_hop[c] = round;
                best[c] = v;
            }
        }
        frontier.swap(next);
    }
    for (std::uint32_t c = 0; c < seeds.size(); ++c) {
        if (best[c] != kUnassigned) seeds[c] = best[c];
    }
    return seeds;
}

// Trims every oversized component down to the cap by moving its vertices,
// farthest from the seed first, into the adjacent component with room that
// adds the least boundary (smallest component overall when no neighbor has
// room).
void rebalance(const Graph& g, std::vector<std::uint32_t>& assignment,
               std::span<const std::uint32_t> hop, std::vector<std::size_t>& size,
               std::size_t cap) {
    const std::uint32_t k = static_cast<std::uint32_t>(size.size());
    auto smallest_with_room = [&](std::uint32_t exclude) {
        std::uint32_t target = kUnassigned;
        for (std::uint32_t t = 0; t < k; ++t) {
            if (t == exclude || size[t] + 1 > cap) continue;
            if (target == kUnassigned || size[t] < size[target]) target = t;
        }
        return target;
    };
    auto move_delta = [&](VertexId v, std::uint32_t to) {
        int delta = is_boundary_with_move(g, assignment, v, v, to) ? 1 : 0;
        delta -= is_boundary_with_move(g, assignment, v, v, assignment[v]) ? 1 : 0;
        for (const Neighbor& nb : g.neighbors(v)) {
            delta += is_boundary_with_move(g, assignment, nb.to, v, to) ? 1 : 0;
            delta -= is_boundary_with_move(g, assignment, nb.to, v, assignment[v]) ? 1 : 0;
        }
        return delta;
    };

    std::vector<VertexId> members;
    for (std::uint32_t c = 0; c < k; ++c) {
        if (size[c] <= cap) continue;
        members.clear();
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (assignment[v] == c) members.push_back(v);
        }
        std::sort(members.begin(), members.end(), [&](VertexId a, VertexId b) {
            if (hop[a] != hop[b]) return hop[a] > hop[b];
            return a < b;
        });
        for (VertexId v : members) {
            if (size[c] <= cap) break;
            std::uint32_t target = kUnassigned;
            for (const Neighbor& nb : g.neighbors(v)) {
                const std::uint32_t t = assignment[nb.to];
                if (t == c || t == kUnassigned || size[t] + 1 > cap) continue;
                if (target == kUnassigned || size[t] < size[target] ||
                    (size[t] == size[target] && t < target)) {
                    target = t;
                }
            }
            if (target == kUnassigned) target = smallest_with_room(c);
            assignment[v] = target;
            --size[c];
            ++size[target];
        }
    }
}

}  // namespace

std::size_t Partition::boundary_count() const {
    std::size_t total = 0;
    for (std::uint8_t f : boundary_flags) total += f;
    return total;
}

std::size_t Partition::boundary_count(std::uint32_t component) const {
    std::size_t total = 0;
    for (VertexId v : component_members[component]) total += boundary_flags[v];
    return total;
}

std::size_t balance_cap(std::size_t n, std::uint32_t k) {
    // ceil(1.1 * n / k) in exact integer arithmetic.
    return (11 * n + 10 * static_cast<std::size_t>(k) - 1) / (10 * static_cast<std::size_t>(k));
}

std::vector<std::uint8_t> compute_boundary(const Graph& g,
                                           std::span<const std::uint32_t> assignment) {
    const std::size_t n = g.num_vertices();
    if (assignment.size() != n) {
        throw std::invalid_argument("compute_boundary: assignment must cover all vertices");
    }
    std::vector<std::uint8_t> flags(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        for (const Neighbor& nb : g.neighbors(v)) {
            if (assignment[nb.to] != assignment[v]) {
                flags[v] = 1;
                break;
            }
        }
    }
    return flags;
}

std::vector<VertexId> compute_reorder_permutation(std::uint32_t k,
                                                  std::span<const std::uint32_t> assignment,
                                                  std::span<const std::uint8_t> boundary_flags) {
    const std::size_t n = assignment.size();
    // Counting sort over the key (component, interior-after-boundary); vertex
    // id order inside each bucket is preserved by the two ascending passes.
    std::vector<std::size_t> boundary_size(k, 0), total_size(k, 0);
    for (std::size_t v = 0; v < n; ++v) {
        ++total_size[assignment[v]];
        if (boundary_flags[v]) ++boundary_size[assignment[v]];
    }
    std::vector<std::size_t> range_start(k + 1, 0);
    for (std::uint32_t c = 0; c < k; ++c) range_start[c + 1] = range_start[c] + total_size[c];

    std::vector<std::size_t> boundary_cursor(k), interior_cursor(k);
    for (std::uint32_t c = 0; c < k; ++c) {
        boundary_cursor[c] = range_start[c];
        interior_cursor[c] = range_start[c] + boundary_size[c];
    }
    std::vector<VertexId> perm(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto& cursor = boundary_flags[v] ? boundary_cursor[assignment[v]]
                                         : interior_cursor[assignment[v]];
        perm[v] = static_cast<VertexId>(cursor++);
    }
    return perm;
}

Partition make_partition(const Graph& g, std::uint32_t k, std::vector<std::uint32_t> assignment) {
    Partition p;
    p.k = k;
    p.assignment = std::move(assignment);
    p.boundary_flags = compute_boundary(g, p.assignment);
    p.component_members.assign(k, {});
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        p.component_members[p.assignment[v]].push_back(v);
    }
    p.permutation = compute_reorder_permutation(k, p.assignment, p.boundary_flags);
    p.inverse_permutation.resize(p.permutation.size());
    for (std::size_t v = 0; v < p.permutation.size(); ++v) {
        p.inverse_permutation[p.permutation[v]] = static_cast<VertexId>(v);
    }
    return p;
}

Partition partition_graph(const Graph& g, std::uint32_t k, std::uint64_t seed) {
    const std::size_t n = g.num_vertices();
    if (k < 1) throw std::invalid_argument("partition_graph: k must be at least 1");
    if (k > n) throw std::invalid_argument("partition_graph: k exceeds vertex count");

    const std::size_t cap = balance_cap(n, k);

    // Seed vertices: k distinct ids, each picked as the best of a few
    // pseudo-random candidates (the one farthest by hop count from the seeds
    // chosen so far, ties to the smallest id). Spreading the seeds keeps the
    // grown regions near-uniform in size.
    std::mt19937_64 rng(seed);
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::vector<std::uint32_t> seed_dist(n);
    std::vector<VertexId> bfs_q;
    auto relax_seed_dist = [&](VertexId s) {
        seed_dist[s] = 0;
        bfs_q.assign(1, s);
        for (std::size_t head = 0; head < bfs_q.size(); ++head) {
            const VertexId u = bfs_q[head];
            for (const Neighbor& nb : g.neighbors(u)) {
                if (seed_dist[nb.to] > seed_dist[u] + 1) {
                    seed_dist[nb.to] = seed_dist[u] + 1;
                    bfs_q.push_back(nb.to);
                }
            }
        }
    };
    auto draw_seeds = [&] {
        std::vector<VertexId> seeds(k);
        std::fill(seed_dist.begin(), seed_dist.end(), kUnassigned);
        for (std::uint32_t c = 0; c < k; ++c) {
            const std::size_t m = std::min<std::size_t>(kSeedCandidates, n - c);
            for (std::size_t t = 0; t < m; ++t) {
                std::size_t j = c + t + static_cast<std::size_t>(rng() % (n - c - t));
                std::swap(ids[c + t], ids[j]);
            }
            std::size_t best = c;
            for (std::size_t t = 1; t < m; ++t) {
                const VertexId cand = ids[c + t], cur = ids[best];
                if (seed_dist[cand] > seed_dist[cur] ||
                    (seed_dist[cand] == seed_dist[cur] && cand < cur)) {
                    best = c + t;
                }
            }
            std::swap(ids[c], ids[best]);
            seeds[c] = ids[c];
            relax_seed_dist(seeds[c]);
        }
        return seeds;
    };

    // Farthest-point variant: after a pseudo-random first seed, each next
    // seed is the vertex farthest by hop count from all seeds so far (ties
    // to the smallest id). Gives the most even spread the metric allows.
    auto farthest_seeds = [&] {
        std::vector<VertexId> seeds(k);
        std::fill(seed_dist.begin(), seed_dist.end(), kUnassigned);
        seeds[0] = static_cast<VertexId>(rng() % n);
        relax_seed_dist(seeds[0]);
        for (std::uint32_t c = 1; c < k; ++c) {
            VertexId pick = 0;
            for (VertexId v = 1; v < n; ++v) {
                if (seed_dist[v] > seed_dist[pick]) pick = v;
            }
            seeds[c] = pick;
            relax_seed_dist(pick);
        }
        return seeds;
    };

    // Refinement: move a boundary vertex to an adjacent component when that
    // strictly lowers the total boundary count and keeps the balance cap.
    std::vector<std::uint32_t> move_targets;
    auto refine = [&](std::vector<std::uint32_t>& assignment, std::vector<std::size_t>& size,
                      std::vector<std::uint8_t>& flags) {
        for (int sweep = 0; sweep < kMaxRefineSweeps; ++sweep) {
            bool improved = false;
            // Alternate sweep direction so fixed dents can unwind both ways.
            for (std::size_t step = 0; step < n; ++step) {
                const VertexId v =
                    (sweep % 2 == 0) ? static_cast<VertexId>(step)
                                     : static_cast<VertexId>(n - 1 - step);
                if (!flags[v]) continue;
                const std::uint32_t from = assignment[v];
                if (size[from] <= 1) continue;

                move_targets.clear();
                for (const Neighbor& nb : g.neighbors(v)) {
                    std::uint32_t c = assignment[nb.to];
                    if (c != from && std::find(move_targets.begin(), move_targets.end(), c) ==
                                         move_targets.end()) {
                        move_targets.push_back(c);
                    }
                }
                std::sort(move_targets.begin(), move_targets.end());

                int best_delta = 0;
                std::uint32_t best_to = kUnassigned;
                for (std::uint32_t to : move_targets) {
                    if (size[to] + 1 > cap) continue;
                    int delta = 0;
                    delta += is_boundary_with_move(g, assignment, v, v, to) ? 1 : 0;
                    delta -= flags[v] ? 1 : 0;
                    for (const Neighbor& nb : g.neighbors(v)) {
                        delta += is_boundary_with_move(g, assignment, nb.to, v, to) ? 1 : 0;
                        delta -= flags[nb.to] ? 1 : 0;
                    }
                    if (delta < best_delta) {
                        best_delta = delta;
                        best_to = to;
                    }
                }
                if (best_to != kUnassigned) {
                    assignment[v] = best_to;
                    --size[from];
                    ++size[best_to];
                    flags[v] = is_boundary_with_move(g, assignment, v, v, best_to) ? 1 : 0;
                    for (const Neighbor& nb : g.neighbors(v)) {
                        flags[nb.to] =
                            is_boundary_with_move(g, assignment, nb.to, v, best_to) ? 1 : 0;
                    }
                    improved = true;
                }
            }
            if (!improved) break;
        }
    };

    // Turns a Voronoi labeling into a balanced, refined candidate partition:
    // vertices no seed reaches (their whole connected part is seedless) go to
    // the smallest component with room, oversized components are trimmed,
    // then refinement polishes the result.
    auto finalize = [&](GrowResult grown) {
        std::vector<std::size_t> sz(k, 0);
        for (VertexId v = 0; v < n; ++v) {
            if (grown.assignment[v] != kUnassigned) ++sz[grown.assignment[v]];
        }
        for (VertexId v = 0; v < n; ++v) {
            if (grown.assignment[v] != kUnassigned) continue;
            std::uint32_t best = kUnassigned;
            for (std::uint32_t c = 0; c < k; ++c) {
                if (sz[c] < cap && (best == kUnassigned || sz[c] < sz[best])) best = c;
            }
            grown.assignment[v] = best;
            ++sz[best];
        }
        rebalance(g, grown.assignment, grown.hop, sz, cap);
        std::vector<std::uint8_t> flags = compute_boundary(g, grown.assignment);
        refine(grown.assignment, sz, flags);
        // Cost is sum of squared per-component boundary sizes: queries pay
        // |B(C1)|*|B(C2)| min-plus steps, so a fat tail hurts more than the
        // same total spread evenly.
        std::vector<std::size_t> bsz(k, 0);
        for (VertexId v = 0; v < n; ++v) {
            if (flags[v]) ++bsz[grown.assignment[v]];
        }
        std::size_t cost = 0;
        for (std::uint32_t c = 0; c < k; ++c) cost += bsz[c] * bsz[c];
        return std::tuple(std::move(grown.assignment), std::move(sz), cost);
    };

    // Region growing with recentering: grow hop-count Voronoi regions, move
    // each seed to its region's most interior vertex, regrow. Recentering
    // evens out region sizes and shapes. Several independent seed draws and
    // all their recentering rounds compete; the lowest-cost candidate wins,
    // so extra rounds and restarts never hurt.
    std::vector<std::uint32_t> assignment;
    std::vector<std::size_t> size;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (int restart = 0; restart < kRestarts; ++restart) {
        std::vector<VertexId> seeds = (restart == 0) ? farthest_seeds() : draw_seeds();
        GrowResult grown = voronoi_grow(g, seeds);
        for (int round = 0;; ++round) {
            auto [cand, cand_size, cand_cost] = finalize(grown);
            if (cand_cost < best_cost) {
                assignment = std::move(cand);
                size = std::move(cand_size);
                best_cost = cand_cost;
            }
            if (round == kRecenterRounds) break;
            seeds = recenter(g, grown.assignment, seeds);
            grown = voronoi_grow(g, seeds);
        }
    }

    for (std::uint32_t c = 0; c < k; ++c) {
        if (size[c] > cap) throw std::logic_error("partition_graph: balance cap violated");
    }
    return make_partition(g, k, std::move(assignment));
}

std::pair<Graph, Partition> reorder_vertices(const Graph& g, const Partition& p) {
    const std::size_t n = g.num_vertices();
    if (p.assignment.size() != n || p.boundary_flags.size() != n) {
        throw std::invalid_argument("reorder_vertices: partition does not match graph");
    }
    // Recompute the permutation from assignment + flags so hand-built
    // partitions are handled the same as partition_graph output.
    std::vector<VertexId> perm = compute_reorder_permutation(p.k, p.assignment, p.boundary_flags);

    std::vector<std::size_t> offsets(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) offsets[perm[v] + 1] = g.degree(v);
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];

    std::vector<Neighbor> adjacency(offsets[n]);
    for (VertexId v = 0; v < n; ++v) {
        std::size_t at = offsets[perm[v]];
        for (const Neighbor& nb : g.neighbors(v)) {
            adjacency[at++] = {perm[nb.to], nb.weight};
        }
        std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[perm[v]]),
                  adjacency.begin() + static_cast<std::ptrdiff_t>(at),
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
    }
    Graph rg = Graph::from_raw(n, std::move(offsets), std::move(adjacency));

    std::vector<std::uint32_t> new_assignment(n);
    for (VertexId v = 0; v < n; ++v) new_assignment[perm[v]] = p.assignment[v];
    Partition rp = make_partition(rg, p.k, std::move(new_assignment));
    return {std::move(rg), std::move(rp)};
}

}  // namespace psp
