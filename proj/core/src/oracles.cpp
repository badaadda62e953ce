#include "hpf/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hpf/parallel.hpp"
#include "hpf/rng.hpp"

namespace hpf {

namespace {

double interaction(const std::vector<double>& x, int beta, bool circle) {
    double prod = 1.0;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double gap;
            if (circle)
                gap = std::abs(2.0 * std::sin(0.5 * (x[std::size_t(j)] - x[std::size_t(i)])));
            else
                gap = std::abs(x[std::size_t(j)] - x[std::size_t(i)]);
            prod *= std::pow(gap, beta);
        }
    return prod;
}

/// Tensor product of the measure's own Gauss rule; exact for the even
/// beta polynomial integrand once the order covers the degree.
double tensor_even(const EnsembleSpec& spec, int order) {
    const bool circle = spec.geometry == Geometry::circle;
    QuadratureRule rule;
    if (circle)
        rule = periodic_rule(std::max(order, spec.beta * (spec.N - 1) + 4));
    else
        rule = spec.measure.quadrature(order);
    const int n = spec.N;
    const auto& nodes = rule.nodes;
    const std::size_t m = nodes.size();

    double total = 0.0;
    std::vector<std::size_t> idx(std::size_t(n), 0);
    std::vector<double> x(static_cast<std::size_t>(n));
    while (true) {
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            x[std::size_t(i)] = nodes[idx[std::size_t(i)]];
            w *= rule.weights[idx[std::size_t(i)]].real();
        }
        total += w * interaction(x, spec.beta, circle);
        int level = 0;
        while (level < n && ++idx[std::size_t(level)] == m) {
            idx[std::size_t(level)] = 0;
            ++level;
        }
        if (level == n) break;
    }
    return total / factorial(n);
}

/// One ordered chamber x_1 < x_2 < ... < x_N times N!; nested mapped
/// Gauss-Legendre with the weight in the integrand keeps the |.|^beta
/// kink out of every panel.
double chambered_odd(const EnsembleSpec& spec, int order) {
    const bool circle = spec.geometry == Geometry::circle;
    const auto [lo, hi] = spec.measure.quadrature_bounds();
    const QuadratureRule base = gauss_legendre_rule(order);
    const int n = spec.N;

    std::vector<double> x(static_cast<std::size_t>(n));
    auto level_value = [&](auto&& self, int level, double upper) -> double {
        const double mid = 0.5 * (lo + upper), half = 0.5 * (upper - lo);
        if (half <= 0.0) return 0.0;
        double acc = 0.0;
        for (std::size_t i = 0; i < base.nodes.size(); ++i) {
            const double xi = mid + half * base.nodes[i];
            x[std::size_t(level)] = xi;
            double w = base.weights[i].real() * half;
            w *= circle ? 1.0 : std::abs(spec.measure.weight_density(xi));
            double inner;
            if (level == 0) {
                inner = interaction(std::vector<double>(x.begin(), x.begin() + n), spec.beta, circle);
            } else {
                inner = self(self, level - 1, xi);
            }
            acc += w * inner;
        }
        return acc;
    };
    // weight of the top-level variable folded the same way
    double total = 0.0;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
        const double xi = mid + half * base.nodes[i];
        x[std::size_t(n - 1)] = xi;
        double w = base.weights[i].real() * half;
        w *= circle ? 1.0 : std::abs(spec.measure.weight_density(xi));
        const double inner =
            (n == 1) ? interaction({xi}, spec.beta, circle) : level_value(level_value, n - 2, xi);
        total += w * inner;
    }
    return total;  // (1/N!) * N! * chamber
}

double direct_value(const EnsembleSpec& spec, int order) {
    if (spec.beta % 2 == 0) return tensor_even(spec, order);
    return chambered_odd(spec, order);
}

}  // namespace

DirectResult direct_partition_tensor(const EnsembleSpec& spec, int order) {
    if (spec.N > 4) throw std::invalid_argument("direct_partition_tensor: N must be <= 4");
    if (!spec.measure.atoms().empty())
        throw std::invalid_argument("direct_partition_tensor: atoms not supported");
    if (order <= 0) {
        order = (spec.beta % 2 == 0) ? std::max(24, spec.beta * spec.N / 2 + 8)
                                     : std::max(72, spec.measure.quad_order());
        if (spec.beta % 2 == 1 && spec.N >= 4) order = std::min(order, 48);
    }
    const double coarse = direct_value(spec, (2 * order) / 3);
    const double value = direct_value(spec, order);
    return {value, std::abs(value - coarse)};
}

DirectResult direct_partition_mc(const EnsembleSpec& spec, std::int64_t samples,
                                 std::uint64_t seed) {
    if (spec.N > 6) throw std::invalid_argument("direct_partition_mc: N must be <= 6");
    if (samples < 2) throw std::invalid_argument("direct_partition_mc: need at least 2 samples");
    const bool circle = spec.geometry == Geometry::circle;
    const MeasureKind kind = spec.measure.kind();
    const CounterRng rng(seed);
    const int n = spec.N;

    const int chunks = std::max(1, default_thread_count());
    std::vector<double> sums(static_cast<std::size_t>(chunks), 0.0), squares(static_cast<std::size_t>(chunks), 0.0);
    parallel_for_chunks(samples, chunks, [&](int chunk, std::int64_t lo, std::int64_t hi) {
        std::vector<double> x(static_cast<std::size_t>(n));
        double s = 0.0, s2 = 0.0;
        for (std::int64_t it = lo; it < hi; ++it) {
            double weight = 1.0;
            for (int i = 0; i < n; ++i) {
                const std::uint64_t c = std::uint64_t(it) * std::uint64_t(n) + std::uint64_t(i);
                switch (kind) {
                    case MeasureKind::gaussian:
                        x[std::size_t(i)] = rng.normal(c);
                        break;
                    case MeasureKind::uniform:
                        x[std::size_t(i)] = rng.uniform(c, spec.measure.lo(), spec.measure.hi());
                        weight *= spec.measure.hi() - spec.measure.lo();
                        break;
                    case MeasureKind::circular:
                        x[std::size_t(i)] = rng.uniform(c, -std::numbers::pi, std::numbers::pi);
                        weight *= 2.0 * std::numbers::pi;
                        break;
                    default:
                        // importance sampling from the uniform proposal
                        x[std::size_t(i)] = rng.uniform(c, spec.measure.lo(), spec.measure.hi());
                        weight *= (spec.measure.hi() - spec.measure.lo()) *
                                  std::abs(spec.measure.weight_density(x[std::size_t(i)]));
                        break;
                }
            }
            const double v = weight * interaction(x, spec.beta, circle);
            s += v;
            s2 += v * v;
        }
        sums[std::size_t(chunk)] = s;
        squares[std::size_t(chunk)] = s2;
    });

    double s = 0.0, s2 = 0.0;
    for (int c = 0; c < chunks; ++c) {
        s += sums[std::size_t(c)];
        s2 += squares[std::size_t(c)];
    }
    const double mean = s / double(samples);
    const double var = std::max(0.0, s2 / double(samples) - mean * mean);
    const double nf = factorial(n);
    return {mean / nf, std::sqrt(var / double(samples)) / nf};
}

double mehta_value(double gamma, int n) {
    if (!(gamma > 0.0)) throw std::invalid_argument("mehta_value: gamma must be positive");
    double lg = -log_gamma(double(n) + 1.0);
    for (int k = 1; k <= n; ++k) lg += log_gamma(1.0 + k * gamma) - log_gamma(1.0 + gamma);
    return std::exp(lg);
}

double selberg_value(double gamma, double a, double b, int n) {
    if (!(a > 0.0) || !(b > 0.0) || gamma < 0.0)
        throw std::invalid_argument("selberg_value: requires a, b > 0 and gamma >= 0");
    double lg = -log_gamma(double(n) + 1.0);
    for (int k = 0; k < n; ++k) {
        lg += log_gamma(a + k * gamma) + log_gamma(b + k * gamma) + log_gamma(1.0 + (k + 1) * gamma);
        lg -= log_gamma(a + b + (n + k - 1) * gamma) + log_gamma(1.0 + gamma);
    }
    return std::exp(lg);
}

double dyson_value(int beta, int n) {
    if (beta < 0) throw std::invalid_argument("dyson_value: beta must be >= 0");
    return std::exp(log_gamma(1.0 + 0.5 * beta * n) - n * log_gamma(1.0 + 0.5 * beta) -
                    log_gamma(double(n) + 1.0));
}

VandermondeCheck vandermonde_identity_check(const CompleteFamily& fam, int L,
                                            const std::vector<double>& lambdas) {
    const int n = static_cast<int>(lambdas.size());
    const int nl = n * L;
    if (fam.size() != nl)
        throw std::invalid_argument("vandermonde_identity_check: family size must be N*L");
    Matrix v(nl, nl);
    for (int block = 0; block < n; ++block) {
        const Matrix slab = vandermonde_block(fam, lambdas[std::size_t(block)], L);
        for (int r = 0; r < nl; ++r)
            for (int ell = 0; ell < L; ++ell) v.at(r, block * L + ell) = slab.at(r, ell);
    }
    const cplx lhs = v.determinant();
    cplx rhs = 1.0;
    for (int m = 0; m < n; ++m)
        for (int k = m + 1; k < n; ++k)
            rhs *= std::pow(cplx(lambdas[std::size_t(k)] - lambdas[std::size_t(m)]), L * L);
    const bool degenerate = std::abs(rhs) < 1e-14;
    const double rel = degenerate ? std::abs(lhs - rhs)
                                  : std::abs(lhs - rhs) / std::abs(rhs);
    return {lhs, rhs, rel, degenerate};
}

SignMatrixCheck sign_matrix_pfaffian_check(const std::vector<double>& lambdas) {
    const int n = static_cast<int>(lambdas.size());
    if (n % 2 != 0) throw std::invalid_argument("sign_matrix_pfaffian_check: even count required");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (lambdas[std::size_t(i)] == lambdas[std::size_t(j)])
                throw std::invalid_argument("sign_matrix_pfaffian_check: coincident entries");

    const int big_m = n / 2;
    Matrix t(n, n), s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double diff = lambdas[std::size_t(j)] - lambdas[std::size_t(i)];
            t.at(i, j) = diff > 0 ? 1.0 : -1.0;
            const double pm = std::pow(lambdas[std::size_t(j)], big_m) -
                              std::pow(lambdas[std::size_t(i)], big_m);
            s.at(i, j) = pm * pm / diff;
        }

    SignMatrixCheck out;
    out.pf_sign_matrix = pfaffian(t);
    out.pf_power_matrix = pfaffian(s);
    out.sign_product = 1.0;
    out.difference_product = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double diff = lambdas[std::size_t(j)] - lambdas[std::size_t(i)];
            out.sign_product *= diff > 0 ? 1.0 : -1.0;
            out.difference_product *= diff;
        }
    return out;
}

namespace {

void sum_partitions(const ExtForm& form, std::uint64_t remaining, std::uint64_t placed,
                    int parity, cplx product, cplx& total) {
    if (remaining == 0) {
        total += (parity ? -1.0 : 1.0) * product;
        return;
    }
    const int k = form.degree();
    const int lowest = std::countr_zero(remaining);
    const std::uint64_t anchor = std::uint64_t{1} << lowest;
    const std::uint64_t pool = remaining & ~anchor;

    // choose the k-1 partners of the lowest remaining element
    std::vector<int> pool_bits;
    for (std::uint64_t m = pool; m; m &= m - 1) pool_bits.push_back(std::countr_zero(m));
    std::vector<int> pick(std::size_t(k - 1));
    auto rec = [&](auto&& self, int start, int chosen) -> void {
        if (chosen == k - 1) {
            std::uint64_t block = anchor;
            for (int i = 0; i < k - 1; ++i) block |= std::uint64_t{1} << pick[std::size_t(i)];
            const cplx c = form.coefficient(block);
            if (c == cplx{}) return;
            const int sign_flip = cross_inversions_parity(placed, block);
            sum_partitions(form, remaining & ~block, placed | block, parity ^ sign_flip,
                           product * c, total);
            return;
        }
        for (int i = start; i <= static_cast<int>(pool_bits.size()) - (k - 1 - chosen); ++i) {
            pick[std::size_t(chosen)] = pool_bits[std::size_t(i)];
            self(self, i + 1, chosen + 1);
        }
    };
    if (k == 1) {
        const cplx c = form.coefficient(anchor);
        if (c != cplx{})
            sum_partitions(form, remaining & ~anchor, placed | anchor,
                           parity ^ cross_inversions_parity(placed, anchor), product * c, total);
        return;
    }
    rec(rec, 0, 0);
}

}  // namespace

cplx hyperpfaffian_sum(const ExtForm& form) {
    const int k = form.degree();
    const int dim = form.dim();
    if (dim > 12) throw std::invalid_argument("hyperpfaffian_sum: dimension capped at 12");
    if (k <= 0 || dim % k != 0)
        throw std::invalid_argument("hyperpfaffian_sum: degree must divide dimension");
    const int n = dim / k;
    // odd-degree forms square to zero under the wedge
    if (k % 2 == 1 && n > 1) return {};
    const std::uint64_t full = (std::uint64_t{1} << dim) - 1;
    cplx total{};
    sum_partitions(form, full, 0, 0, 1.0, total);
    return total;
}

}  // namespace hpf
