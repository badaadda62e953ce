#pragma once

#include <vector>

#include "hpf/ext_form.hpp"

namespace hpf {

/// Nodes and weights such that sum_i w_i f(x_i) approximates the integral
/// of f against the rule's measure.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<cplx> weights;

    cplx mass() const noexcept {
        cplx s = 0.0;
        for (const cplx& w : weights) s += w;
        return s;
    }
};

/// Gauss rule for the standard normal density e^{-x^2/2} / sqrt(2 pi);
/// weights sum to 1.
QuadratureRule gauss_hermite_rule(int order);

/// Gauss-Legendre on [-1, 1], weight 1.
QuadratureRule gauss_legendre_rule(int order);

/// Gauss-Jacobi on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1.
QuadratureRule gauss_jacobi_rule(int order, double alpha, double beta);

/// Gauss-Legendre mapped to [lo, hi].
QuadratureRule gauss_legendre_on(int order, double lo, double hi);

/// Rule for the density x^(a-1) (1-x)^(b-1) on [0, 1]; weights sum to
/// B(a, b).
QuadratureRule jacobi_density_rule(int order, double a, double b);

/// Midpoint (periodic trapezoid) rule for d(theta) on [-pi, pi); exact
/// discrete orthogonality for frequencies below the order.
QuadratureRule periodic_rule(int order);

}  // namespace hpf
