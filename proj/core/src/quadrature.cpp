#include "hpf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hpf/special.hpp"

namespace hpf {

namespace {

/// Eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each normalized eigenvector (implicit-shift QL).  diag
/// and offdiag are consumed; offdiag has one fewer entry.
void sym_tridiag_eigen(std::vector<double>& diag, std::vector<double>& offdiag,
                       std::vector<double>& first_components) {
    const int n = static_cast<int>(diag.size());
    std::vector<double>& d = diag;
    std::vector<double> e = offdiag;
    e.resize(static_cast<std::size_t>(n), 0.0);
    std::vector<double>& z = first_components;
    z.assign(static_cast<std::size_t>(n), 0.0);
    if (n == 0) return;
    z[0] = 1.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("sym_tridiag_eigen: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    // sort nodes ascending, carrying the eigenvector components
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[static_cast<std::size_t>(a)] < d[static_cast<std::size_t>(b)]; });
    std::vector<double> ds(static_cast<std::size_t>(n)), zs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ds[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        zs[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    d = std::move(ds);
    z = std::move(zs);
}

/// Golub-Welsch: nodes are the Jacobi-matrix eigenvalues, weights are
/// mass * (first eigenvector component)^2.
QuadratureRule golub_welsch(std::vector<double> diag, std::vector<double> offdiag, double mass) {
    std::vector<double> z;
    sym_tridiag_eigen(diag, offdiag, z);
    QuadratureRule rule;
    rule.nodes = diag;
    rule.weights.reserve(diag.size());
    for (double v : z) rule.weights.emplace_back(mass * v * v);
    return rule;
}

}  // namespace

QuadratureRule gauss_hermite_rule(int order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite_rule: order must be >= 1");
    std::vector<double> d(static_cast<std::size_t>(order), 0.0);
    std::vector<double> e(static_cast<std::size_t>(order) - 1);
    for (int i = 1; i < order; ++i) e[static_cast<std::size_t>(i) - 1] = std::sqrt(double(i));
    return golub_welsch(std::move(d), std::move(e), 1.0);
}

QuadratureRule gauss_legendre_rule(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre_rule: order must be >= 1");
    std::vector<double> d(static_cast<std::size_t>(order), 0.0);
    std::vector<double> e(static_cast<std::size_t>(order) - 1);
    for (int i = 1; i < order; ++i) {
        const double ii = i;
        e[static_cast<std::size_t>(i) - 1] = ii / std::sqrt(4.0 * ii * ii - 1.0);
    }
    return golub_welsch(std::move(d), std::move(e), 2.0);
}

QuadratureRule gauss_jacobi_rule(int order, double alpha, double beta) {
    if (order < 1) throw std::invalid_argument("gauss_jacobi_rule: order must be >= 1");
    if (alpha <= -1.0 || beta <= -1.0)
        throw std::invalid_argument("gauss_jacobi_rule: exponents must exceed -1");
    std::vector<double> d(static_cast<std::size_t>(order));
    std::vector<double> e(static_cast<std::size_t>(order) - 1);
    const double ab = alpha + beta;
    d[0] = (beta - alpha) / (ab + 2.0);
    for (int i = 1; i < order; ++i) {
        const double den = (2.0 * i + ab) * (2.0 * i + ab + 2.0);
        d[static_cast<std::size_t>(i)] = (beta * beta - alpha * alpha) / den;
        const double num = 4.0 * i * (i + alpha) * (i + beta) * (i + ab);
        const double den2 = (2.0 * i + ab) * (2.0 * i + ab) * (2.0 * i + ab + 1.0) * (2.0 * i + ab - 1.0);
        e[static_cast<std::size_t>(i) - 1] = std::sqrt(num / den2);
    }
    const double mass = std::exp((ab + 1.0) * std::numbers::ln2 + log_gamma(alpha + 1.0) +
                                 log_gamma(beta + 1.0) - log_gamma(ab + 2.0));
    return golub_welsch(std::move(d), std::move(e), mass);
}

QuadratureRule gauss_legendre_on(int order, double lo, double hi) {
    QuadratureRule base = gauss_legendre_rule(order);
    QuadratureRule out;
    out.nodes.reserve(base.nodes.size());
    out.weights.reserve(base.nodes.size());
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
        out.nodes.push_back(mid + half * base.nodes[i]);
        out.weights.push_back(base.weights[i] * half);
    }
    return out;
}

QuadratureRule jacobi_density_rule(int order, double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("jacobi_density_rule: a, b must be > 0");
    // x = (1+t)/2 maps the (1-t)^(b-1) (1+t)^(a-1) weight onto
    // x^(a-1) (1-x)^(b-1), with the Jacobian folded into the mass.
    QuadratureRule base = gauss_jacobi_rule(order, b - 1.0, a - 1.0);
    QuadratureRule out;
    out.nodes.reserve(base.nodes.size());
    out.weights.reserve(base.nodes.size());
    const double scale = std::pow(2.0, 1.0 - a - b);
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
        out.nodes.push_back(0.5 * (1.0 + base.nodes[i]));
        out.weights.push_back(base.weights[i] * scale);
    }
    return out;
}

QuadratureRule periodic_rule(int order) {
    if (order < 1) throw std::invalid_argument("periodic_rule: order must be >= 1");
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(order));
    rule.weights.assign(static_cast<std::size_t>(order), cplx(2.0 * std::numbers::pi / order));
    for (int i = 0; i < order; ++i)
        rule.nodes.push_back(-std::numbers::pi + (i + 0.5) * 2.0 * std::numbers::pi / order);
    return rule;
}

}  // namespace hpf
