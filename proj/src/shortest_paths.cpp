#include "psp/shortest_paths.hpp"

#include <algorithm>
#include <stdexcept>

namespace psp {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

namespace {

// Indexed binary min-heap keyed by tentative distance. Supports push and
// decrease-key through a position table, so the heap never exceeds n.
class DistanceHeap {
public:
    explicit DistanceHeap(std::size_t n) : pos_(n, kAbsent) { heap_.reserve(64); }

    bool empty() const { return heap_.empty(); }

    VertexId pop_min(const std::vector<double>& dist) {
        VertexId top = heap_.front();
        pos_[top] = kAbsent;
        VertexId last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_.front() = last;
            pos_[last] = 0;
            sift_down(0, dist);
        }
        return top;
    }

    void push_or_decrease(VertexId v, const std::vector<double>& dist) {
        std::uint32_t i = pos_[v];
        if (i == kAbsent) {
            i = static_cast<std::uint32_t>(heap_.size());
            heap_.push_back(v);
            pos_[v] = i;
        }
        sift_up(i, dist);
    }

private:
    static constexpr std::uint32_t kAbsent = 0xffffffffu;

    void sift_up(std::uint32_t i, const std::vector<double>& dist) {
        VertexId v = heap_[i];
        double d = dist[v];
        while (i > 0) {
            std::uint32_t parent = (i - 1) / 2;
            if (dist[heap_[parent]] <= d) break;
            heap_[i] = heap_[parent];
            pos_[heap_[i]] = i;
            i = parent;
        }
        heap_[i] = v;
        pos_[v] = i;
    }

    void sift_down(std::uint32_t i, const std::vector<double>& dist) {
        VertexId v = heap_[i];
        double d = dist[v];
        const auto size = static_cast<std::uint32_t>(heap_.size());
        for (;;) {
            std::uint32_t child = 2 * i + 1;
            if (child >= size) break;
            if (child + 1 < size && dist[heap_[child + 1]] < dist[heap_[child]]) ++child;
            if (d <= dist[heap_[child]]) break;
            heap_[i] = heap_[child];
            pos_[heap_[i]] = i;
            i = child;
        }
        heap_[i] = v;
        pos_[v] = i;
    }

    std::vector<VertexId> heap_;
    std::vector<std::uint32_t> pos_;
};

}  // namespace

std::vector<double> dijkstra_sssp(const Graph& g, VertexId source) {
    const std::size_t n = g.num_vertices();
    if (source >= n) throw std::invalid_argument("dijkstra_sssp: source out of range");

    std::vector<double> dist(n, kUnreachable);
    dist[source] = 0.0;
    DistanceHeap heap(n);
    heap.push_or_decrease(source, dist);

    while (!heap.empty()) {
        VertexId u = heap.pop_min(dist);
        const double du = dist[u];
        for (const Neighbor& nb : g.neighbors(u)) {
            double nd = du + nb.weight;
            if (nd < dist[nb.to]) {
                dist[nb.to] = nd;
                heap.push_or_decrease(nb.to, dist);
            }
        }
    }
    return dist;
}

namespace {

// Relaxes d[i][j] over intermediates kk in [k0,k1) for the tile
// [i0,i1) x [j0,j1). Plain j-inner loop so the compiler can vectorize.
void relax_tile(Matrix& d, std::size_t k0, std::size_t k1, std::size_t i0, std::size_t i1,
                std::size_t j0, std::size_t j1) {
    for (std::size_t kk = k0; kk < k1; ++kk) {
        const double* krow = d.row(kk);
        for (std::size_t i = i0; i < i1; ++i) {
            const double dik = d(i, kk);
            if (dik == kUnreachable) continue;
            double* irow = d.row(i);
            for (std::size_t j = j0; j < j1; ++j) {
                irow[j] = std::min(irow[j], dik + krow[j]);
            }
        }
    }
}

}  // namespace

Matrix apsp_dense(const Graph& g, std::size_t block_size) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return Matrix();
    if (block_size == 0) throw std::invalid_argument("apsp_dense: block size must be positive");

    Matrix d(n, n, kUnreachable);
    for (std::size_t v = 0; v < n; ++v) d(v, v) = 0.0;
    for (VertexId u = 0; u < n; ++u) {
        for (const Neighbor& nb : g.neighbors(u)) d(u, nb.to) = nb.weight;
    }

    const std::size_t nb = (n + block_size - 1) / block_size;
    for (std::size_t kb = 0; kb < nb; ++kb) {
        const std::size_t k0 = kb * block_size;
        const std::size_t k1 = std::min(n, k0 + block_size);
        // Pass 1: diagonal tile is self-contained.
        relax_tile(d, k0, k1, k0, k1, k0, k1);
        // Pass 2: row and column panels depend on the diagonal tile.
        for (std::size_t jb = 0; jb < nb; ++jb) {
            if (jb == kb) continue;
            const std::size_t j0 = jb * block_size;
            const std::size_t j1 = std::min(n, j0 + block_size);
            relax_tile(d, k0, k1, k0, k1, j0, j1);
        }
        for (std::size_t ib = 0; ib < nb; ++ib) {
            if (ib == kb) continue;
            const std::size_t i0 = ib * block_size;
            const std::size_t i1 = std::min(n, i0 + block_size);
            relax_tile(d, k0, k1, i0, i1, k0, k1);
        }
        // Pass 3: remainder tiles depend on both panels.
        for (std::size_t ib = 0; ib < nb; ++ib) {
            if (ib == kb) continue;
            const std::size_t i0 = ib * block_size;
            const std::size_t i1 = std::min(n, i0 + block_size);
            for (std::size_t jb = 0; jb < nb; ++jb) {
                if (jb == kb) continue;
                const std::size_t j0 = jb * block_size;
                const std::size_t j1 = std::min(n, j0 + block_size);
                relax_tile(d, k0, k1, i0, i1, j0, j1);
            }
        }
    }
    return d;
}

double min_plus_combine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("min_plus_combine: length mismatch");
    double best = kUnreachable;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::min(best, a[i] + b[i]);
    return best;
}

}  // namespace psp
