#include "psp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psp/errors.hpp"

namespace psp {

namespace {

std::string pair_str(VertexId u, VertexId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
    offsets_.assign(n + 1, 0);
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw GraphInvariantError("edge " + pair_str(e.u, e.v) +
                                      " references vertex outside 0.." + std::to_string(n ? n - 1 : 0));
        }
        if (e.u == e.v) {
            throw GraphInvariantError("self-loop at vertex " + std::to_string(e.u));
        }
        if (std::isnan(e.weight) || std::isinf(e.weight)) {
            throw GraphInvariantError("non-finite weight on edge " + pair_str(e.u, e.v));
        }
        if (e.weight < 0.0) {
            throw GraphInvariantError("negative weight on edge " + pair_str(e.u, e.v));
        }
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];

    adjacency_.resize(edges.size() * 2);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges) {
        adjacency_[cursor[e.u]++] = {e.v, e.weight};
        adjacency_[cursor[e.v]++] = {e.u, e.weight};
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto begin = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        auto end = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        std::sort(begin, end, [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
        for (auto it = begin; it != end && it + 1 != end; ++it) {
            if (it->to == (it + 1)->to) {
                throw GraphInvariantError("duplicate edge " + pair_str(static_cast<VertexId>(v), it->to));
            }
        }
    }
}

Graph Graph::from_raw(std::size_t n, std::vector<std::size_t> offsets,
                      std::vector<Neighbor> adjacency) {
    Graph g;
    g.n_ = n;
    g.offsets_ = std::move(offsets);
    g.adjacency_ = std::move(adjacency);
    return g;
}

double Graph::edge_weight(VertexId u, VertexId v) const {
    auto nbrs = neighbors(u);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                               [](const Neighbor& a, VertexId id) { return a.to < id; });
    if (it != nbrs.end() && it->to == v) return it->weight;
    return kUnreachable;
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (VertexId u = 0; u < n_; ++u) {
        for (const Neighbor& nb : neighbors(u)) {
            if (u < nb.to) out.push_back({u, nb.to, nb.weight});
        }
    }
    return out;
}

ValidationReport validate(const Graph& g) {
    ValidationReport report;
    const std::size_t n = g.num_vertices();

    for (VertexId u = 0; u < n; ++u) {
        auto nbrs = g.neighbors(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const Neighbor& nb = nbrs[i];
            if (std::isnan(nb.weight) || std::isinf(nb.weight)) {
                report.issues.push_back({IssueKind::NonFiniteWeight, u, nb.to});
            } else if (nb.weight < 0.0) {
                report.issues.push_back({IssueKind::NegativeWeight, u, nb.to});
            }
            if (nb.to == u) {
                report.issues.push_back({IssueKind::SelfLoop, u, u});
            }
            if (i + 1 < nbrs.size() && nbrs[i + 1].to == nb.to && u <= nb.to) {
                report.issues.push_back({IssueKind::DuplicateEdge, u, nb.to});
            }
            // Reverse arc must exist with the identical weight.
            if (nb.to != u && u < nb.to) {
                double back = nb.to < n ? g.edge_weight(nb.to, u) : kUnreachable;
                if (!(back == nb.weight)) {
                    report.issues.push_back({IssueKind::AsymmetricPair, u, nb.to});
                }
            }
        }
    }
    // An arc u->v with u > v and no forward counterpart also breaks symmetry.
    for (VertexId u = 0; u < n; ++u) {
        for (const Neighbor& nb : g.neighbors(u)) {
            if (nb.to < u && g.edge_weight(nb.to, u) == kUnreachable) {
                report.issues.push_back({IssueKind::AsymmetricPair, nb.to, u});
            }
        }
    }

    report.ok = report.issues.empty();

    if (n > 0) {
        std::vector<std::uint8_t> seen(n, 0);
        std::vector<VertexId> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            for (const Neighbor& nb : g.neighbors(u)) {
                if (nb.to < n && !seen[nb.to]) {
                    seen[nb.to] = 1;
                    ++reached;
                    stack.push_back(nb.to);
                }
            }
        }
        report.connected = reached == n;
    }
    return report;
}

}  // namespace psp
