#pragma once

#include <complex>
#include <vector>

#include "hpf/ext_form.hpp"

namespace hpf {

/// Dense complex matrix, row-major.  Square where an operation demands it.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

    static Matrix zero(int n) { return Matrix(n, n); }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    cplx& at(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const cplx& at(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }
    cplx& operator()(int i, int j) { return at(i, j); }
    const cplx& operator()(int i, int j) const { return at(i, j); }

    double max_abs() const noexcept;

    /// |A[i][j] + A[j][i]| <= tol * (1 + max entry) for all i, j
    /// (includes the zero diagonal).
    bool is_antisymmetric(double tol = 1e-9) const noexcept;

    /// Determinant by LU with partial pivoting.
    cplx determinant() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

/// Pfaffian of an antisymmetric matrix of even order, normalized so that
/// Pf([[0, a], [-a, 0]]) = a.  First-row Laplace expansion with
/// memoization over index subsets; the reference algorithm for order <= 24.
cplx pfaffian(const Matrix& a, double antisym_tol = 1e-9);

/// The 2-form sum_{m<n} a_{mn} e_m ^ e_n identified with an antisymmetric
/// matrix.
ExtForm form_from_matrix(const Matrix& a, double antisym_tol = 1e-9);

/// Inverse of form_from_matrix: A[m][n] = coeff(e_m ^ e_n) for m < n,
/// antisymmetrized.
Matrix matrix_from_form(const ExtForm& a);

}  // namespace hpf
