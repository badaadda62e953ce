#include "hpf/polynomial.hpp"

#include <cmath>

namespace hpf {

Polynomial Polynomial::monomial(int degree, cplx lead) {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    c.back() = lead;
    return Polynomial(std::move(c));
}

cplx Polynomial::eval(cplx x) const noexcept {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
    for (cplx& v : c_) v *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!c_.empty() && std::abs(c_.back()) < kCoeffDropTol) c_.pop_back();
}

Polynomial modified_derivative(const Polynomial& p, int ell) {
    if (ell < 0) throw std::invalid_argument("modified_derivative: negative order");
    if (ell == 0) return p;
    if (ell > p.degree()) return {};
    std::vector<cplx> c(static_cast<std::size_t>(p.degree() - ell) + 1);
    for (int j = ell; j <= p.degree(); ++j) c[j - ell] = binomial(j, ell) * p.coeff(j);
    return Polynomial(std::move(c));
}

double binomial(int n, int k) noexcept {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return std::round(v);
}

}  // namespace hpf
