#pragma once

#include <complex>
#include <vector>

#include "hpf/ext_form.hpp"

namespace hpf {

/// Dense polynomial with complex coefficients, ascending degree.
/// The zero polynomial has an empty coefficient vector.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(cplx v) { return Polynomial({v}); }
    static Polynomial monomial(int degree, cplx lead = 1.0);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<cplx>& coeffs() const noexcept { return c_; }
    cplx coeff(int j) const noexcept {
        return (j >= 0 && j < static_cast<int>(c_.size())) ? c_[j] : cplx{};
    }
    cplx leading() const noexcept { return c_.empty() ? cplx{} : c_.back(); }

    cplx eval(cplx x) const noexcept;  // Horner

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(cplx s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

private:
    void trim();
    std::vector<cplx> c_;
};

/// The normalized derivative D^l f = f^(l) / l!: the coefficient of x^j
/// maps to C(j, l) * c_j on x^(j-l).  l beyond the degree gives zero.
Polynomial modified_derivative(const Polynomial& p, int ell);

/// Binomial coefficient as a double (exact through the 2^53 range).
double binomial(int n, int k) noexcept;

}  // namespace hpf
