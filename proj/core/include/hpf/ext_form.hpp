#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "hpf/multi_index.hpp"

namespace hpf {

using cplx = std::complex<double>;

/// Coefficients below this magnitude are dropped (underflow guard only;
/// no aggressive pruning, so results stay deterministic).
inline constexpr double kCoeffDropTol = 1e-300;

/// Sparse homogeneous k-form over R^dim with complex coefficients.
/// Terms are kept sorted by basis mask; absent keys mean zero.
class ExtForm {
public:
    using Term = std::pair<std::uint64_t, cplx>;

    ExtForm() = default;

    ExtForm(int dim, int degree) : dim_(dim), degree_(degree) {
        if (dim < 0 || dim > MultiIndex::kMaxDim) throw std::invalid_argument("ExtForm: dim out of range");
        if (degree < 0 || degree > dim) throw std::invalid_argument("ExtForm: degree out of range");
    }

    /// Degree-0 form holding a single scalar.
    static ExtForm scalar(int dim, cplx value);

    /// Builds a form from (mask, coefficient) pairs; repeated keys are
    /// accumulated, tiny coefficients dropped.
    static ExtForm from_terms(int dim, int degree, std::vector<Term> terms);

    int dim() const noexcept { return dim_; }
    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    cplx coefficient(std::uint64_t mask) const;
    cplx coefficient(const MultiIndex& t) const { return coefficient(t.mask()); }

    /// Adds into the coefficient of the given basis wedge.
    void add_term(const MultiIndex& t, cplx value);

    ExtForm& operator+=(const ExtForm& o);
    ExtForm& operator*=(cplx s);
    friend ExtForm operator+(ExtForm a, const ExtForm& b) { return a += b; }
    friend ExtForm operator*(cplx s, ExtForm a) { return a *= s; }

    /// Largest coefficient magnitude (0 for the zero form).
    double max_abs() const noexcept;

private:
    friend ExtForm wedge(const ExtForm&, const ExtForm&, int);

    void normalize();  // sort, merge, prune

    int dim_ = 0;
    int degree_ = 0;
    std::vector<Term> terms_;
};

/// Graded product a ^ b.  Bilinear and associative; coefficient of the
/// union key accumulates sign_of_concatenation * a[S] * b[T].  `threads`
/// caps worker parallelism for large operands; results are deterministic
/// for a fixed thread count.
ExtForm wedge(const ExtForm& a, const ExtForm& b, int threads = 1);

/// n-fold wedge a ^ a ^ ... ^ a as a plain left fold; n = 0 yields the
/// scalar 1.
ExtForm wedge_power(const ExtForm& a, int n, int threads = 1);

/// Hyperpfaffian of a k-form with k | dim: the volume-form coefficient of
/// wedge_power(a, dim/k) divided by (dim/k)!.
cplx hyperpfaffian(const ExtForm& a, int threads = 1);

}  // namespace hpf
