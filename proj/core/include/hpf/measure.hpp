#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpf/quadrature.hpp"

namespace hpf {

enum class MeasureKind { gaussian, jacobi, uniform, circular, custom };

std::string to_string(MeasureKind kind);

/// Point mass: the stored weight already includes the density factor,
/// i.e. weight = c * w(x) for an atom placed with coefficient c.
struct Atom {
    double x;
    cplx weight;
};

/// Weight measure on the line (or the angle interval for the circular
/// kind) with moment, incomplete-moment and skew-moment providers plus
/// optional atomic perturbations.  Immutable after construction; moment
/// evaluation is pure and cached.  Call ensure_skew_table before reading
/// skew moments from concurrent workers.
class Measure {
public:
    /// Standard normal density e^{-x^2/2} / sqrt(2 pi) on R.
    static Measure gaussian(int quad_order = 80);
    /// Density x^(a-1) (1-x)^(b-1) on [0, 1]; a, b > 0.
    static Measure jacobi(double a, double b, int quad_order = 80);
    /// Density 1 on [lo, hi].
    static Measure uniform(double lo, double hi, int quad_order = 80);
    /// Complex angular density (-i e^{-i theta})^(beta (N-1) / 2) on
    /// [-pi, pi), with the principal half-angle branch when the exponent
    /// is a half-integer.
    static Measure circular(int n, int beta, int quad_order = 80);
    /// Arbitrary nonnegative weight on [lo, hi]; moments via quadrature.
    static Measure custom(std::function<double(double)> weight, double lo, double hi,
                          int quad_order = 80);

    MeasureKind kind() const noexcept { return kind_; }
    int quad_order() const noexcept { return quad_order_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    double jacobi_a() const noexcept { return a_; }
    double jacobi_b() const noexcept { return b_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    /// Exponent of the circular weight, beta (N-1) / 2.
    double circular_exponent() const noexcept { return circ_exp_; }
    bool is_circular() const noexcept { return kind_ == MeasureKind::circular; }

    /// Finite interval carrying (essentially) all of the continuous mass;
    /// the gaussian line is truncated where the density underflows the
    /// working tolerance.
    std::pair<double, double> quadrature_bounds() const noexcept;

    /// Density value w(x); complex for the circular kind.
    cplx weight_density(double x) const;

    /// M(k) = integral of x^k (continuous part plus atoms); "x^k" reads
    /// e^{i k theta} for the circular kind.
    cplx moment(int k) const;
    cplx continuous_moment(int k) const;

    /// Integral of y^k over y <= x, continuous part only.
    cplx incomplete_moment(int k, double x) const;

    /// M(j, k) = (1/2) double integral of x^j y^k sgn(y - x), including
    /// atom cross terms; evaluated through the incomplete-moment
    /// reduction with a 1D outer quadrature.  M(k, k) = 0 identically.
    cplx skew_moment(int j, int k) const;

    /// Rule for the continuous part: Gauss matched to the weight for the
    /// line kinds, the periodic midpoint rule for d(theta) on the circle
    /// (the complex circular density is left to the integrand).
    QuadratureRule quadrature(int order) const;
    QuadratureRule quadrature() const { return quadrature(quad_order_); }

    /// Copy with extra point masses; each (x, c) contributes weight
    /// c * w(x).  Locations must lie inside the support.
    Measure with_atoms(const std::vector<std::pair<double, cplx>>& atoms) const;

    /// Copy with the whole measure (continuous part and atoms) scaled.
    Measure scaled(double t) const;

    /// Precomputes ordinary moments through max_k and the antisymmetrized
    /// skew table through (max_j, max_k); afterwards reads are lock-free.
    void ensure_tables(int max_j, int max_k) const;

private:
    Measure() = default;

    cplx raw_skew_moment(int j, int k) const;
    std::vector<cplx> incomplete_moments_upto(int kmax, double x) const;
    void check_support(double x) const;

    MeasureKind kind_ = MeasureKind::gaussian;
    double a_ = 1.0, b_ = 1.0;          // jacobi exponents
    double lo_ = 0.0, hi_ = 0.0;        // interval kinds
    double circ_exp_ = 0.0;             // beta (N-1) / 2
    double scale_ = 1.0;                // global density scale
    int quad_order_ = 80;
    std::function<double(double)> custom_weight_;
    std::vector<Atom> atoms_;

    struct Cache {
        std::mutex mutex;
        std::vector<std::optional<cplx>> moments;        // continuous only
        std::vector<cplx> skew;                          // dense (max_j+1) x (max_k+1)
        int skew_j = -1, skew_k = -1;
        QuadratureRule outer_rule;                       // for skew reduction
        bool outer_ready = false;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Circular weight value (-i e^{-i theta})^(beta (N-1)/2) with the
/// principal branch for half-integer exponents.
cplx circular_weight(int n, int beta, double theta);

}  // namespace hpf
