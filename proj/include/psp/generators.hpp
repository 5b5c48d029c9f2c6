#pragma once

#include <cstdint>

#include "psp/graph.hpp"

namespace psp {

// Edge-weight model for the synthetic families. Uniform weights are drawn on
// a 1/1024 lattice in [lo, hi], so path sums over integer-scaled weights stay
// exact in double regardless of summation order.
struct WeightModel {
    enum class Kind { Unit, Uniform };

    Kind kind = Kind::Unit;
    double lo = 1.0;
    double hi = 1.0;

    static WeightModel unit() { return {}; }
    static WeightModel uniform(double lo, double hi);
};

// rows x cols 4-neighbor grid, row-major ids (id = r*cols + c).
Graph generate_grid(std::size_t rows, std::size_t cols, const WeightModel& weights,
                    std::uint64_t seed);

// Grid plus one diagonal per unit cell; the diagonal direction is drawn
// pseudo-randomly from the seed. Planar by construction, max degree 8.
Graph generate_triangulated_grid(std::size_t rows, std::size_t cols, const WeightModel& weights,
                                 std::uint64_t seed);

}  // namespace psp
