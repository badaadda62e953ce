#include "hpf/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hpf/special.hpp"

namespace hpf {

namespace {

constexpr double kGaussianCutoff = 10.0;  // |x| beyond this carries no usable mass

double sgn(double v) noexcept { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

cplx power_basis(bool circular, double x, int k) noexcept {
    if (!circular) return std::pow(x, k);
    return std::exp(cplx(0.0, k * x));
}

}  // namespace

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::gaussian: return "gaussian";
        case MeasureKind::jacobi: return "jacobi";
        case MeasureKind::uniform: return "uniform";
        case MeasureKind::circular: return "circular";
        case MeasureKind::custom: return "custom";
    }
    return "?";
}

cplx circular_weight(int n, int beta, double theta) {
    const double e = 0.5 * beta * (n - 1);
    // (-i)^e e^{-i e theta} with the continuous half-angle branch on
    // [-pi, pi); never a principal complex power, which would cut the
    // interval for half-integer exponents.
    return std::exp(cplx(0.0, -e * (0.5 * std::numbers::pi + theta)));
}

Measure Measure::gaussian(int quad_order) {
    Measure m;
    m.kind_ = MeasureKind::gaussian;
    m.quad_order_ = quad_order;
    return m;
}

Measure Measure::jacobi(double a, double b, int quad_order) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("Measure::jacobi: a, b must be > 0");
    Measure m;
    m.kind_ = MeasureKind::jacobi;
    m.a_ = a;
    m.b_ = b;
    m.lo_ = 0.0;
    m.hi_ = 1.0;
    m.quad_order_ = quad_order;
    return m;
}

Measure Measure::uniform(double lo, double hi, int quad_order) {
    if (!(lo < hi)) throw std::invalid_argument("Measure::uniform: requires lo < hi");
    Measure m;
    m.kind_ = MeasureKind::uniform;
    m.lo_ = lo;
    m.hi_ = hi;
    m.quad_order_ = quad_order;
    return m;
}

Measure Measure::circular(int n, int beta, int quad_order) {
    if (n < 1 || beta < 0) throw std::invalid_argument("Measure::circular: bad parameters");
    Measure m;
    m.kind_ = MeasureKind::circular;
    m.lo_ = -std::numbers::pi;
    m.hi_ = std::numbers::pi;
    m.circ_exp_ = 0.5 * beta * (n - 1);
    m.quad_order_ = quad_order;
    return m;
}

Measure Measure::custom(std::function<double(double)> weight, double lo, double hi, int quad_order) {
    if (!(lo < hi)) throw std::invalid_argument("Measure::custom: requires lo < hi");
    Measure m;
    m.kind_ = MeasureKind::custom;
    m.custom_weight_ = std::move(weight);
    m.lo_ = lo;
    m.hi_ = hi;
    m.quad_order_ = quad_order;
    return m;
}

std::pair<double, double> Measure::quadrature_bounds() const noexcept {
    if (kind_ == MeasureKind::gaussian) return {-kGaussianCutoff, kGaussianCutoff};
    return {lo_, hi_};
}

cplx Measure::weight_density(double x) const {
    switch (kind_) {
        case MeasureKind::gaussian:
            return scale_ * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        case MeasureKind::jacobi:
            if (x < 0.0 || x > 1.0) return 0.0;
            return scale_ * std::pow(x, a_ - 1.0) * std::pow(1.0 - x, b_ - 1.0);
        case MeasureKind::uniform:
            return (x < lo_ || x > hi_) ? cplx{} : cplx{scale_};
        case MeasureKind::circular:
            return scale_ * std::exp(cplx(0.0, -circ_exp_ * (0.5 * std::numbers::pi + x)));
        case MeasureKind::custom:
            if (x < lo_ || x > hi_) return 0.0;
            return scale_ * custom_weight_(x);
    }
    return {};
}

cplx Measure::continuous_moment(int k) const {
    if (k < 0) throw std::invalid_argument("moment: negative order");
    {
        std::lock_guard lock(cache_->mutex);
        if (k < static_cast<int>(cache_->moments.size()) && cache_->moments[static_cast<std::size_t>(k)])
            return *cache_->moments[static_cast<std::size_t>(k)];
    }
    cplx value{};
    switch (kind_) {
        case MeasureKind::gaussian:
            value = (k % 2 == 1) ? 0.0 : double_factorial(k - 1);
            break;
        case MeasureKind::jacobi:
            // B(a + k, b)
            value = std::exp(log_gamma(a_ + k) + log_gamma(b_) - log_gamma(a_ + b_ + k));
            break;
        case MeasureKind::uniform:
            value = (std::pow(hi_, k + 1) - std::pow(lo_, k + 1)) / (k + 1);
            break;
        case MeasureKind::circular: {
            const double p = k - circ_exp_;
            const cplx phase = std::exp(cplx(0.0, -0.5 * std::numbers::pi * circ_exp_));
            if (p == 0.0)
                value = phase * 2.0 * std::numbers::pi;
            else
                value = phase * 2.0 * std::sin(std::numbers::pi * p) / p;
            break;
        }
        case MeasureKind::custom: {
            const QuadratureRule rule = quadrature(quad_order_);
            cplx acc{};
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights[i] * std::pow(rule.nodes[i], k);
            value = acc / scale_;  // rule already carries the scale
            break;
        }
    }
    value *= scale_;
    std::lock_guard lock(cache_->mutex);
    if (k >= static_cast<int>(cache_->moments.size()))
        cache_->moments.resize(static_cast<std::size_t>(k) + 1);
    cache_->moments[static_cast<std::size_t>(k)] = value;
    return value;
}

cplx Measure::moment(int k) const {
    cplx value = continuous_moment(k);
    const bool circ = is_circular();
    for (const Atom& atom : atoms_) value += atom.weight * power_basis(circ, atom.x, k);
    return value;
}

std::vector<cplx> Measure::incomplete_moments_upto(int kmax, double x) const {
    std::vector<cplx> out(static_cast<std::size_t>(kmax) + 1);
    switch (kind_) {
        case MeasureKind::gaussian: {
            const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
            const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
            if (kmax >= 0) out[0] = cdf;
            if (kmax >= 1) out[1] = -phi;
            double xp = 1.0;  // x^{k-1}
            for (int k = 2; k <= kmax; ++k) {
                xp *= x;
                out[static_cast<std::size_t>(k)] =
                    -xp * phi + double(k - 1) * out[static_cast<std::size_t>(k) - 2];
            }
            break;
        }
        case MeasureKind::uniform: {
            const double xx = std::clamp(x, lo_, hi_);
            for (int k = 0; k <= kmax; ++k)
                out[static_cast<std::size_t>(k)] =
                    (std::pow(xx, k + 1) - std::pow(lo_, k + 1)) / (k + 1);
            break;
        }
        case MeasureKind::jacobi: {
            const double xx = std::clamp(x, 0.0, 1.0);
            if (xx <= 0.0) break;
            if (xx >= 1.0) {
                for (int k = 0; k <= kmax; ++k) out[static_cast<std::size_t>(k)] = continuous_moment(k) / scale_;
                break;
            }
            // y = x (1+t)/2 puts the y^(a-1) endpoint factor on the rule
            const QuadratureRule base = gauss_jacobi_rule(quad_order_, 0.0, a_ - 1.0);
            const double half = 0.5 * xx;
            for (std::size_t i = 0; i < base.nodes.size(); ++i) {
                const double y = half * (1.0 + base.nodes[i]);
                const double w = base.weights[i].real() * std::pow(half, a_) * std::pow(1.0 - y, b_ - 1.0);
                double yp = 1.0;
                for (int k = 0; k <= kmax; ++k) {
                    out[static_cast<std::size_t>(k)] += w * yp;
                    yp *= y;
                }
            }
            break;
        }
        case MeasureKind::circular: {
            const double theta = std::clamp(x, -std::numbers::pi, std::numbers::pi);
            const cplx phase = std::exp(cplx(0.0, -0.5 * std::numbers::pi * circ_exp_));
            for (int k = 0; k <= kmax; ++k) {
                const double p = k - circ_exp_;
                if (p == 0.0) {
                    out[static_cast<std::size_t>(k)] = phase * (theta + std::numbers::pi);
                } else {
                    const cplx num = std::exp(cplx(0.0, p * theta)) -
                                     std::exp(cplx(0.0, -p * std::numbers::pi));
                    out[static_cast<std::size_t>(k)] = phase * num / cplx(0.0, p);
                }
            }
            break;
        }
        case MeasureKind::custom: {
            if (x <= lo_) break;
            const QuadratureRule rule = gauss_legendre_on(quad_order_, lo_, std::min(x, hi_));
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double w = rule.weights[i].real() * custom_weight_(rule.nodes[i]);
                double yp = 1.0;
                for (int k = 0; k <= kmax; ++k) {
                    out[static_cast<std::size_t>(k)] += w * yp;
                    yp *= rule.nodes[i];
                }
            }
            break;
        }
    }
    for (cplx& v : out) v *= scale_;
    return out;
}

cplx Measure::incomplete_moment(int k, double x) const {
    if (k < 0) throw std::invalid_argument("incomplete_moment: negative order");
    return incomplete_moments_upto(k, x)[static_cast<std::size_t>(k)];
}

QuadratureRule Measure::quadrature(int order) const {
    if (order < 1) throw std::invalid_argument("Measure::quadrature: order must be >= 1");
    QuadratureRule rule;
    switch (kind_) {
        case MeasureKind::gaussian:
            rule = gauss_hermite_rule(order);
            break;
        case MeasureKind::jacobi:
            rule = jacobi_density_rule(order, a_, b_);
            break;
        case MeasureKind::uniform:
            rule = gauss_legendre_on(order, lo_, hi_);
            break;
        case MeasureKind::circular:
            // bare d(theta) rule; the complex density stays in integrands
            return periodic_rule(order);
        case MeasureKind::custom: {
            rule = gauss_legendre_on(order, lo_, hi_);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                rule.weights[i] *= custom_weight_(rule.nodes[i]);
            break;
        }
    }
    if (scale_ != 1.0)
        for (cplx& w : rule.weights) w *= scale_;
    return rule;
}

cplx Measure::raw_skew_moment(int j, int k) const {
    // outer rule carrying d(nu), complex for the circular kind; the
    // circular integrand is smooth but not periodic, so mapped
    // Gauss-Legendre with an order tracking the oscillation frequency
    // replaces the periodic rule there
    const int needed = is_circular()
                           ? std::max(quad_order_, int(1.6 * (j + k + 2.0 * circ_exp_)) + 48)
                           : quad_order_;
    QuadratureRule outer;
    {
        std::lock_guard lock(cache_->mutex);
        if (!cache_->outer_ready || static_cast<int>(cache_->outer_rule.nodes.size()) < needed) {
            if (is_circular()) {
                cache_->outer_rule = gauss_legendre_on(needed, -std::numbers::pi, std::numbers::pi);
                for (std::size_t i = 0; i < cache_->outer_rule.nodes.size(); ++i)
                    cache_->outer_rule.weights[i] *= weight_density(cache_->outer_rule.nodes[i]);
            } else {
                cache_->outer_rule = quadrature(needed);
            }
            cache_->outer_ready = true;
        }
        outer = cache_->outer_rule;
    }

    const bool circ = is_circular();
    const cplx mk = continuous_moment(k);
    cplx acc{};
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
        const double x = outer.nodes[i];
        const cplx inc = incomplete_moment(k, x);
        acc += outer.weights[i] * power_basis(circ, x, j) * (mk - 2.0 * inc);
    }
    cplx total = 0.5 * acc;

    if (!atoms_.empty()) {
        // atom-continuum cross terms, both orders
        for (const Atom& atom : atoms_) {
            const cplx pj = power_basis(circ, atom.x, j);
            const cplx pk = power_basis(circ, atom.x, k);
            const cplx ick = incomplete_moment(k, atom.x);
            const cplx icj = incomplete_moment(j, atom.x);
            total += 0.5 * atom.weight * pj * (continuous_moment(k) - 2.0 * ick);
            total += 0.5 * atom.weight * pk * (2.0 * icj - continuous_moment(j));
        }
        // atom-atom, both orders
        for (const Atom& am : atoms_)
            for (const Atom& an : atoms_)
                total += 0.5 * am.weight * an.weight * power_basis(circ, am.x, j) *
                         power_basis(circ, an.x, k) * sgn(an.x - am.x);
    }
    return total;
}

cplx Measure::skew_moment(int j, int k) const {
    if (j < 0 || k < 0) throw std::invalid_argument("skew_moment: negative order");
    if (j == k) return {};  // kernel antisymmetry
    {
        std::lock_guard lock(cache_->mutex);
        if (j <= cache_->skew_j && k <= cache_->skew_k)
            return cache_->skew[static_cast<std::size_t>(j) * (cache_->skew_k + 1) + k];
    }
    return raw_skew_moment(j, k);
}

void Measure::ensure_tables(int max_j, int max_k) const {
    {
        std::lock_guard lock(cache_->mutex);
        if (max_j <= cache_->skew_j && max_k <= cache_->skew_k) return;
    }
    for (int k = 0; k <= std::max(max_j, max_k); ++k) continuous_moment(k);
    const int mj = std::max(max_j, max_k);  // keep the table square for the negated half
    std::vector<cplx> table(static_cast<std::size_t>(mj + 1) * (mj + 1));
    for (int j = 0; j <= mj; ++j)
        for (int k = j + 1; k <= mj; ++k) {
            const cplx v = raw_skew_moment(j, k);
            table[static_cast<std::size_t>(j) * (mj + 1) + k] = v;
            table[static_cast<std::size_t>(k) * (mj + 1) + j] = -v;
        }
    std::lock_guard lock(cache_->mutex);
    cache_->skew = std::move(table);
    cache_->skew_j = mj;
    cache_->skew_k = mj;
}

void Measure::check_support(double x) const {
    switch (kind_) {
        case MeasureKind::gaussian:
            if (!std::isfinite(x)) throw std::invalid_argument("atom outside support");
            return;
        case MeasureKind::circular:
            if (x < -std::numbers::pi || x >= std::numbers::pi)
                throw std::invalid_argument("atom outside support");
            return;
        default:
            if (x < lo_ || x > hi_) throw std::invalid_argument("atom outside support");
    }
}

Measure Measure::with_atoms(const std::vector<std::pair<double, cplx>>& atoms) const {
    Measure out = *this;
    out.cache_ = std::make_shared<Cache>();
    for (const auto& [x, c] : atoms) {
        check_support(x);
        out.atoms_.push_back({x, c * weight_density(x)});
    }
    return out;
}

Measure Measure::scaled(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("Measure::scaled: factor must be positive");
    Measure out = *this;
    out.cache_ = std::make_shared<Cache>();
    out.scale_ *= t;
    for (Atom& atom : out.atoms_) atom.weight *= t;
    return out;
}

}  // namespace hpf
