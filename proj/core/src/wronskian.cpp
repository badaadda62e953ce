#include "hpf/wronskian.hpp"

#include <bit>
#include <stdexcept>

namespace hpf {

namespace {

void check_indices(const CompleteFamily& fam, const MultiIndex& t) {
    if (t.empty()) throw std::invalid_argument("wronskian: empty multi-index");
    for (int e : t.elements())
        if (e > fam.size()) throw std::invalid_argument("wronskian: index out of family range");
}

}  // namespace

cplx wronskian(const CompleteFamily& fam, const MultiIndex& t, cplx x) {
    check_indices(fam, t);
    const int L = t.degree();
    const auto rows = t.elements();
    Matrix m(L, L);
    for (int n = 0; n < L; ++n) {
        const Polynomial& p = fam.poly(rows[static_cast<std::size_t>(n)]);
        for (int ell = 0; ell < L; ++ell) m.at(n, ell) = modified_derivative(p, ell).eval(x);
    }
    return m.determinant();
}

Polynomial wronskian_polynomial(const CompleteFamily& fam, const MultiIndex& t) {
    check_indices(fam, t);
    const int L = t.degree();
    const auto rows = t.elements();
    std::vector<Polynomial> entries(static_cast<std::size_t>(L) * L);
    for (int n = 0; n < L; ++n) {
        const Polynomial& p = fam.poly(rows[static_cast<std::size_t>(n)]);
        for (int ell = 0; ell < L; ++ell)
            entries[static_cast<std::size_t>(n) * L + ell] = modified_derivative(p, ell);
    }
    // dp over row subsets; column index = popcount(mask) - 1
    std::vector<Polynomial> dp(std::size_t{1} << L);
    dp[0] = Polynomial::constant(1.0);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << L); ++mask) {
        const int col = std::popcount(mask) - 1;
        Polynomial det;
        // expansion along the last column: cofactor sign (-1)^(idx + col)
        double sign = (col % 2 == 0) ? 1.0 : -1.0;
        for (std::uint32_t m = mask; m; m &= m - 1) {
            const int row = std::countr_zero(m);
            Polynomial term = entries[static_cast<std::size_t>(row) * L + col] * dp[mask & ~(std::uint32_t{1} << row)];
            det += cplx(sign) * term;
            sign = -sign;
        }
        dp[mask] = std::move(det);
    }
    return dp[(std::size_t{1} << L) - 1];
}

MonomialWronskian monomial_wronskian_closed_form(const MultiIndex& t) {
    const auto e = t.elements();
    const int L = t.degree();
    double delta = 1.0;
    int sum = 0;
    for (int k = 0; k < L; ++k) {
        sum += e[static_cast<std::size_t>(k)];
        for (int j = 0; j < k; ++j)
            delta *= e[static_cast<std::size_t>(k)] - e[static_cast<std::size_t>(j)];
    }
    double fact = 1.0;
    for (int ell = 2; ell < L; ++ell) {
        double f = 1.0;
        for (int i = 2; i <= ell; ++i) f *= i;
        fact *= f;
    }
    return {delta / fact, sum - L * (L + 1) / 2};
}

Matrix vandermonde_block(const CompleteFamily& fam, cplx x, int L) {
    const int nl = fam.size();
    Matrix m(nl, L);
    for (int n = 0; n < nl; ++n)
        for (int ell = 0; ell < L; ++ell)
            m.at(n, ell) = modified_derivative(fam.poly(n + 1), ell).eval(x);
    return m;
}

}  // namespace hpf
