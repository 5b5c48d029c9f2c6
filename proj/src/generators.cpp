#include "psp/generators.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace psp {

namespace {

class WeightDrawer {
public:
    WeightDrawer(const WeightModel& model, std::mt19937_64& rng) : model_(model), rng_(rng) {}

    double operator()() {
        if (model_.kind == WeightModel::Kind::Unit) return 1.0;
        // 1025 lattice points including both endpoints.
        auto step = static_cast<double>(rng_() % 1025u);
        return model_.lo + (model_.hi - model_.lo) * (step / 1024.0);
    }

private:
    WeightModel model_;
    std::mt19937_64& rng_;
};

std::size_t checked_vertex_count(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("grid dimensions must be positive");
    if (cols > std::numeric_limits<std::size_t>::max() / rows ||
        rows * cols > std::numeric_limits<VertexId>::max()) {
        throw std::overflow_error("rows*cols exceeds the supported vertex-count range");
    }
    return rows * cols;
}

}  // namespace

WeightModel WeightModel::uniform(double lo, double hi) {
    if (lo < 0.0 || hi < lo || std::isnan(lo) || std::isnan(hi) || std::isinf(hi)) {
        throw std::invalid_argument("uniform weight bounds must satisfy 0 <= lo <= hi < inf");
    }
    WeightModel m;
    m.kind = Kind::Uniform;
    m.lo = lo;
    m.hi = hi;
    return m;
}

Graph generate_grid(std::size_t rows, std::size_t cols, const WeightModel& weights,
                    std::uint64_t seed) {
    const std::size_t n = checked_vertex_count(rows, cols);
    std::mt19937_64 rng(seed);
    WeightDrawer draw(weights, rng);

    std::vector<Edge> edges;
    edges.reserve(2 * n);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = static_cast<VertexId>(r * cols + c);
            if (c + 1 < cols) edges.push_back({v, v + 1, draw()});
            if (r + 1 < rows) edges.push_back({v, static_cast<VertexId>(v + cols), draw()});
        }
    }
    return Graph(n, edges);
}

Graph generate_triangulated_grid(std::size_t rows, std::size_t cols, const WeightModel& weights,
                                 std::uint64_t seed) {
    const std::size_t n = checked_vertex_count(rows, cols);
    std::mt19937_64 rng(seed);
    WeightDrawer draw(weights, rng);

    std::vector<Edge> edges;
    edges.reserve(3 * n);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = static_cast<VertexId>(r * cols + c);
            if (c + 1 < cols) edges.push_back({v, v + 1, draw()});
            if (r + 1 < rows) edges.push_back({v, static_cast<VertexId>(v + cols), draw()});
            if (c + 1 < cols && r + 1 < rows) {
                // One diagonal per cell; either orientation keeps planarity.
                bool down_right = (rng() & 1u) != 0;
                if (down_right) {
                    edges.push_back({v, static_cast<VertexId>(v + cols + 1), draw()});
                } else {
                    edges.push_back({v + 1, static_cast<VertexId>(v + cols), draw()});
                }
            }
        }
    }
    return Graph(n, edges);
}

}  // namespace psp
