#pragma once

#include <cstddef>
#include <vector>

namespace pscale {

// Minimal dense row-major matrix. Just enough for least squares.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct LeastSquaresSolution {
    std::vector<double> coefficients;
    Matrix xtx_inverse;  // (X'X)^-1, from the triangular factor
    std::vector<std::size_t> deficient_columns;  // empty when full rank

    bool full_rank() const { return deficient_columns.empty(); }
};

// Least squares via Householder reflections (no explicit normal equations).
// Columns whose triangular-factor diagonal falls below rank_tol relative to
// the largest diagonal are reported in deficient_columns; coefficients and
// xtx_inverse are only meaningful when full_rank().
LeastSquaresSolution solve_least_squares(const Matrix& x,
                                         const std::vector<double>& y,
                                         double rank_tol = 1e-10);

}  // namespace pscale
