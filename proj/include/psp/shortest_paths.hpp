#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "psp/graph.hpp"

namespace psp {

// Dense row-major table of distances.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Exact single-source distances via Dijkstra on an indexed binary heap with
// decrease-key, O(m log n). Unreachable vertices get kUnreachable.
std::vector<double> dijkstra_sssp(const Graph& g, VertexId source);

// Exact all-pairs distances via cache-blocked Floyd-Warshall (diagonal block,
// row/column panels, remainder). Output is independent of the block size.
Matrix apsp_dense(const Graph& g, std::size_t block_size = 64);

// min over i of a[i] + b[i], with infinity-absorbing addition.
// Empty inputs yield kUnreachable. Throws std::invalid_argument on
// length mismatch.
double min_plus_combine(std::span<const double> a, std::span<const double> b);

}  // namespace psp
