#include "hpf/matrix.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace hpf {

double Matrix::max_abs() const noexcept {
    double m = 0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool Matrix::is_antisymmetric(double tol) const noexcept {
    if (!square()) return false;
    const double scale = tol * (1.0 + max_abs());
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (std::abs(at(i, j) + at(j, i)) > scale) return false;
    return true;
}

cplx Matrix::determinant() const {
    if (!square()) throw std::invalid_argument("determinant: matrix not square");
    const int n = rows_;
    Matrix lu = *this;
    cplx det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(lu.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(lu.at(r, col));
            if (v > best) { best = v; pivot = r; }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(lu.at(col, c), lu.at(pivot, c));
            det = -det;
        }
        det *= lu.at(col, col);
        const cplx inv = 1.0 / lu.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cplx f = lu.at(r, col) * inv;
            if (f == cplx{}) continue;
            for (int c = col + 1; c < n; ++c) lu.at(r, c) -= f * lu.at(col, c);
        }
    }
    return det;
}

namespace {

constexpr int kMaxPfaffianOrder = 24;

cplx pfaffian_expand(const Matrix& a, std::uint32_t mask,
                     std::unordered_map<std::uint32_t, cplx>& memo) {
    if (mask == 0) return 1.0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;

    const int i = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    cplx sum = 0.0;
    double sign = 1.0;  // (-1)^k for the k-th smallest partner, k starting at 2
    for (std::uint32_t m = rest; m; m &= m - 1) {
        const int j = std::countr_zero(m);
        const cplx sub = pfaffian_expand(a, rest & ~(std::uint32_t{1} << j), memo);
        sum += sign * (a.at(i, j) * sub);
        sign = -sign;
    }
    memo.emplace(mask, sum);
    return sum;
}

}  // namespace

cplx pfaffian(const Matrix& a, double antisym_tol) {
    if (!a.square()) throw std::invalid_argument("pfaffian: matrix not square");
    const int n = a.rows();
    if (n % 2 != 0) throw std::invalid_argument("pfaffian: odd order");
    if (n > kMaxPfaffianOrder) throw std::invalid_argument("pfaffian: order above supported limit");
    if (!a.is_antisymmetric(antisym_tol)) throw std::invalid_argument("pfaffian: matrix not antisymmetric");
    if (n == 0) return 1.0;
    std::unordered_map<std::uint32_t, cplx> memo;
    const std::uint32_t full = (n == 32) ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    return pfaffian_expand(a, full, memo);
}

ExtForm form_from_matrix(const Matrix& a, double antisym_tol) {
    if (!a.square()) throw std::invalid_argument("form_from_matrix: matrix not square");
    if (!a.is_antisymmetric(antisym_tol))
        throw std::invalid_argument("form_from_matrix: matrix not antisymmetric");
    const int n = a.rows();
    std::vector<ExtForm::Term> terms;
    for (int m = 0; m < n; ++m)
        for (int k = m + 1; k < n; ++k) {
            const cplx v = a.at(m, k);
            if (std::abs(v) >= kCoeffDropTol)
                terms.emplace_back((std::uint64_t{1} << m) | (std::uint64_t{1} << k), v);
        }
    return ExtForm::from_terms(n, 2, std::move(terms));
}

Matrix matrix_from_form(const ExtForm& a) {
    if (a.degree() != 2) throw std::invalid_argument("matrix_from_form: form degree must be 2");
    Matrix out(a.dim(), a.dim());
    for (const auto& [mask, value] : a.terms()) {
        const int m = std::countr_zero(mask);
        const int k = std::countr_zero(mask & (mask - 1));
        out.at(m, k) = value;
        out.at(k, m) = -value;
    }
    return out;
}

}  // namespace hpf
