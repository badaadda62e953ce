#pragma once

#include "hpf/matrix.hpp"
#include "hpf/multi_index.hpp"
#include "hpf/poly_family.hpp"

namespace hpf {

/// Wronskian of the selected polynomials at x: the determinant of the
/// L x L matrix with entry (n, l) = D^(l-1) p_{t(n)} evaluated at x,
/// computed numerically via LU.
cplx wronskian(const CompleteFamily& fam, const MultiIndex& t, cplx x);

/// The same Wronskian expanded as a polynomial in x (column-by-column
/// Laplace expansion over row subsets).
Polynomial wronskian_polynomial(const CompleteFamily& fam, const MultiIndex& t);

/// For the monomial family the Wronskian is a single monomial:
/// constant * x^exponent with constant = prod_{j<k}(t_k - t_j) divided by
/// prod_{l=1}^{L} (l-1)!, exponent = sum t - L(L+1)/2.
struct MonomialWronskian {
    double constant;
    int exponent;
};
MonomialWronskian monomial_wronskian_closed_form(const MultiIndex& t);

/// NL x L slab with entry (n, l) = D^(l-1) p_n(x).
Matrix vandermonde_block(const CompleteFamily& fam, cplx x, int L);

}  // namespace hpf
