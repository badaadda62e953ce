#pragma once

#include <map>
#include <string>

#include "hpf/ext_form.hpp"
#include "hpf/matrix.hpp"
#include "hpf/measure.hpp"
#include "hpf/poly_family.hpp"
#include "hpf/wronskian.hpp"

namespace hpf {

enum class Geometry { real_line, circle };

std::string to_string(Geometry g);

/// Which of the four assembly regimes applies; a pure function of
/// (L parity, N parity, beta).
enum class EnsembleCase {
    l2_even,        // beta = L^2, L even: single integral of the L-form
    l2_odd_n_even,  // beta = L^2, L odd, N even: ordering-sign pair form
    l2_odd_n_odd,   // beta = L^2, L odd, N odd: pair form plus bordering
    l2_plus_one,    // beta = L^2 + 1, L odd, N even: polynomial pair kernel
};

std::string to_string(EnsembleCase c);

enum class PairKernel {
    ordering_sign,    // sgn(y - x)
    power_difference  // (y^M - x^M)^2 / (y - x)
};

/// Full description of a computation: (beta, L, N), geometry, the weight
/// measure, the complete polynomial family of size N*L, and the worker
/// cap for data-parallel loops.
struct EnsembleSpec {
    int beta = 0;
    int L = 0;
    int N = 0;
    Geometry geometry = Geometry::real_line;
    Measure measure = Measure::gaussian();
    CompleteFamily family;
    FamilyKind family_kind = FamilyKind::monomial;
    int threads = 1;
};

/// Builds a validated spec; L is derived from beta (beta = L^2, or
/// beta = L^2 + 1 with L odd and N even).  The family is constructed with
/// size N*L.
EnsembleSpec make_ensemble_spec(int beta, int n, Geometry geometry, Measure measure,
                                FamilyKind family_kind = FamilyKind::monomial,
                                std::uint64_t seed = 0, int threads = 1);

EnsembleCase select_case(const EnsembleSpec& spec);

/// Partition function value with provenance.
struct ZnResult {
    cplx value;
    EnsembleCase ensemble_case = EnsembleCase::l2_even;
    int form_dimension = 0;
    int form_degree = 0;
    int beta = 0, L = 0, N = 0;
    Geometry geometry = Geometry::real_line;
    std::map<std::string, double> oracle_values;
    std::map<std::string, double> discrepancies;
    double seconds = 0.0;
};

/// The L-form with Wronskian coefficients at the point x (x = e^{i theta}
/// on the circle); one term per increasing multi-index.
ExtForm build_omega(const EnsembleSpec& spec, cplx x);

/// Coefficient-wise integral of build_omega against the measure: each
/// Wronskian is expanded once and contracted with the moment table.
ExtForm integrated_omega(const EnsembleSpec& spec);

/// The 2L-form with coefficients (1/2) <Wr_t, Wr_u>_kernel on e_t ^ e_u,
/// skew pairings evaluated through (skew-)moment tables.  For the odd-N
/// bordered case the form lives in dimension (N+1)L with indices in the
/// first N*L coordinates.
ExtForm double_integral_form(const EnsembleSpec& spec, PairKernel kernel);

/// Bordering term for odd N: integrated_omega embedded in (N+1)L
/// dimensions, wedged with e_{NL+1} ^ ... ^ e_{NL+L}.
ExtForm border_term(const EnsembleSpec& spec);

/// Z_N (or C_N on the circle) as the hyperpfaffian of the case form.
ZnResult partition_function(const EnsembleSpec& spec);

/// The classical antisymmetric matrices for L in {1, 2}: the beta = 4
/// integral matrix, the beta = 1 skew matrix (bordered when N is odd),
/// and the beta = 2 polynomial-kernel matrix.  Entries are the collected
/// form coefficients, normalized so that Pf equals the partition
/// function.
Matrix classical_matrices(const EnsembleSpec& spec);

/// n-point correlation function at the given points (n = points.size(),
/// n <= 3), extracted as the multilinear atom-weight coefficient of the
/// perturbed partition function by inclusion-exclusion.
double correlation(const EnsembleSpec& spec, const std::vector<double>& points);

}  // namespace hpf
