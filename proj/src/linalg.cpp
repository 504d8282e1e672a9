#include "pscale/linalg.hpp"

#include <cassert>
#include <cmath>

namespace pscale {

// Classic Householder QR applied to [X | y]: after the sweep the top p rows
// hold R and the transformed response; back substitution gives the
// coefficients and the inverse triangular factor gives (X'X)^-1 = R^-1 R^-T.
LeastSquaresSolution solve_least_squares(const Matrix& x,
                                         const std::vector<double>& y,
                                         double rank_tol) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    assert(y.size() == n && n >= p && p > 0);

    Matrix qr = x;
    std::vector<double> rhs = y;
    std::vector<double> diag(p, 0.0);

    for (std::size_t j = 0; j < p; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm = std::hypot(norm, qr(i, j));
        if (norm == 0.0) {
            diag[j] = 0.0;
            continue;
        }
        if (qr(j, j) < 0.0) norm = -norm;  // sign keeps the reflector head >= 1
        for (std::size_t i = j; i < n; ++i) qr(i, j) /= norm;
        qr(j, j) += 1.0;

        // Apply the reflector to the remaining columns and to the response.
        for (std::size_t k = j + 1; k < p; ++k) {
            double s = 0.0;
            for (std::size_t i = j; i < n; ++i) s += qr(i, j) * qr(i, k);
            s = -s / qr(j, j);
            for (std::size_t i = j; i < n; ++i) qr(i, k) += s * qr(i, j);
        }
        double s = 0.0;
        for (std::size_t i = j; i < n; ++i) s += qr(i, j) * rhs[i];
        s = -s / qr(j, j);
        for (std::size_t i = j; i < n; ++i) rhs[i] += s * qr(i, j);

        diag[j] = -norm;
    }

    LeastSquaresSolution solution;

    double max_diag = 0.0;
    for (double d : diag) max_diag = std::max(max_diag, std::fabs(d));
    for (std::size_t j = 0; j < p; ++j) {
        if (std::fabs(diag[j]) <= rank_tol * max_diag) {
            solution.deficient_columns.push_back(j);
        }
    }
    if (!solution.full_rank()) return solution;

    // Back substitution: R b = transformed rhs.
    solution.coefficients.assign(p, 0.0);
    for (std::size_t jj = p; jj-- > 0;) {
        double s = rhs[jj];
        for (std::size_t k = jj + 1; k < p; ++k) s -= qr(jj, k) * solution.coefficients[k];
        solution.coefficients[jj] = s / diag[jj];
    }

    // R^-1 by back substitution on the identity, column by column.
    Matrix rinv(p, p, 0.0);
    for (std::size_t col = 0; col < p; ++col) {
        for (std::size_t jj = p; jj-- > 0;) {
            double s = (jj == col) ? 1.0 : 0.0;
            for (std::size_t k = jj + 1; k < p; ++k) {
                double rjk = (jj < k) ? qr(jj, k) : 0.0;
                s -= rjk * rinv(k, col);
            }
            rinv(jj, col) = s / diag[jj];
        }
    }

    solution.xtx_inverse = Matrix(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < p; ++k) s += rinv(i, k) * rinv(j, k);
            solution.xtx_inverse(i, j) = s;
        }
    }
    return solution;
}

}  // namespace pscale
