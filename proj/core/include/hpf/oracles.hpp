#pragma once

#include <cstdint>

#include "hpf/ensemble.hpp"
#include "hpf/special.hpp"

namespace hpf {

/// Value with an accuracy estimate (order refinement delta for
/// quadrature, standard error for Monte Carlo).
struct DirectResult {
    double value = 0.0;
    double error = 0.0;
};

/// Brute-force evaluation of the partition-function integral.  Even beta
/// uses a tensor Gauss rule matched to the weight; odd beta splits the
/// domain into order chambers (the integrand is symmetric, so one chamber
/// times N!) and nests mapped Gauss-Legendre rules.  N <= 4.
DirectResult direct_partition_tensor(const EnsembleSpec& spec, int order = 0);

/// Monte Carlo estimate with a fixed-seed counter-based generator;
/// N <= 6.
DirectResult direct_partition_mc(const EnsembleSpec& spec, std::int64_t samples,
                                 std::uint64_t seed);

/// Gaussian-weight closed form: F_N(gamma) / N! with
/// F_N(gamma) = prod_{n=1}^{N} Gamma(1 + n gamma) / Gamma(1 + gamma).
double mehta_value(double gamma, int n);

/// Selberg product over [0, 1] with density x^(a-1) (1-x)^(b-1),
/// divided by N!.
double selberg_value(double gamma, double a, double b, int n);

/// Circular closed form Gamma(1 + beta N / 2) / Gamma(1 + beta/2)^N / N!
/// for the normalized d(theta)/2pi convention.
double dyson_value(int beta, int n);

/// Determinant of the confluent block Vandermonde matrix against the
/// product formula prod_{m<n} (lambda_n - lambda_m)^(L^2).
struct VandermondeCheck {
    cplx lhs;
    cplx rhs;
    double rel_err;
    bool degenerate;  // coincident points: both sides vanish
};
VandermondeCheck vandermonde_identity_check(const CompleteFamily& fam, int L,
                                            const std::vector<double>& lambdas);

/// Pf of the sign matrix [sgn(l_n - l_m)] against the sign product, and
/// Pf of the power-difference matrix [(l_n^M - l_m^M)^2 / (l_n - l_m)]
/// against prod (l_n - l_m); even count, distinct entries.
struct SignMatrixCheck {
    cplx pf_sign_matrix;
    double sign_product;
    cplx pf_power_matrix;
    double difference_product;
};
SignMatrixCheck sign_matrix_pfaffian_check(const std::vector<double>& lambdas);

/// The hyperpfaffian as an explicit signed sum over partitions of
/// {1..dim} into dim/k blocks of size k; cross-validates the wedge-power
/// path at tiny sizes (dim <= 12).
cplx hyperpfaffian_sum(const ExtForm& form);

}  // namespace hpf
