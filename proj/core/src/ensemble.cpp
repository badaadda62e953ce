#include "hpf/ensemble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "hpf/parallel.hpp"
#include "hpf/special.hpp"

namespace hpf {

namespace {

constexpr double kFormKeyGuard = 5e6;

double binomial_estimate(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 0; i < std::min(k, n - k); ++i) v = v * (n - i) / (i + 1);
    return v;
}

/// Wronskian coefficient vectors for every increasing multi-index, in
/// mask order.
struct Expansions {
    std::vector<std::uint64_t> masks;
    std::vector<std::vector<cplx>> coeffs;
    int max_degree = 0;
};

Expansions expand_wronskians(const EnsembleSpec& spec) {
    Expansions out;
    out.masks = multi_index_masks(spec.N * spec.L, spec.L);
    out.coeffs.resize(out.masks.size());
    parallel_for_chunks(
        static_cast<std::int64_t>(out.masks.size()), spec.threads,
        [&](int, std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i) {
                const MultiIndex t(spec.N * spec.L, out.masks[static_cast<std::size_t>(i)]);
                out.coeffs[static_cast<std::size_t>(i)] =
                    wronskian_polynomial(spec.family, t).coeffs();
            }
        });
    for (const auto& c : out.coeffs)
        out.max_degree = std::max(out.max_degree, static_cast<int>(c.size()) - 1);
    return out;
}

using TermMap = std::unordered_map<std::uint64_t, cplx>;

ExtForm map_to_sorted_form(int dim, int degree, TermMap& acc) {
    std::vector<ExtForm::Term> terms;
    terms.reserve(acc.size());
    for (auto& [k, v] : acc)
        if (std::abs(v) >= kCoeffDropTol) terms.emplace_back(k, v);
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return ExtForm::from_terms(dim, degree, std::move(terms));
}

void check_guardrail(const EnsembleSpec& spec) {
    const EnsembleCase c = select_case(spec);
    const int dim = (c == EnsembleCase::l2_odd_n_odd) ? (spec.N + 1) * spec.L : spec.N * spec.L;
    if (binomial_estimate(dim, std::min(2 * spec.L, dim)) > kFormKeyGuard)
        throw std::invalid_argument("spec exceeds the form-key guardrail");
}

}  // namespace

std::string to_string(Geometry g) {
    return g == Geometry::real_line ? "line" : "circle";
}

std::string to_string(EnsembleCase c) {
    switch (c) {
        case EnsembleCase::l2_even: return "L2_even";
        case EnsembleCase::l2_odd_n_even: return "L2_odd_N_even";
        case EnsembleCase::l2_odd_n_odd: return "L2_odd_N_odd";
        case EnsembleCase::l2_plus_one: return "L2_plus_1";
    }
    return "?";
}

EnsembleSpec make_ensemble_spec(int beta, int n, Geometry geometry, Measure measure,
                                FamilyKind family_kind, std::uint64_t seed, int threads) {
    if (beta < 1) throw std::invalid_argument("beta must be positive");
    if (n < 1) throw std::invalid_argument("N must be positive");

    int L = 0;
    const int root = static_cast<int>(std::lround(std::sqrt(double(beta))));
    const int root_m1 = static_cast<int>(std::lround(std::sqrt(double(beta - 1))));
    if (root * root == beta) {
        L = root;
    } else if (beta >= 2 && root_m1 * root_m1 == beta - 1 && root_m1 % 2 == 1) {
        L = root_m1;
        if (n % 2 != 0)
            throw std::invalid_argument("beta = L^2 + 1 requires even N");
    } else {
        throw std::invalid_argument("beta must be L^2 or L^2+1 (with L odd)");
    }

    if (geometry == Geometry::circle && measure.kind() != MeasureKind::circular)
        throw std::invalid_argument("circle geometry requires the circular measure");
    if (geometry == Geometry::real_line && measure.kind() == MeasureKind::circular)
        throw std::invalid_argument("circular measure requires circle geometry");

    EnsembleSpec spec;
    spec.beta = beta;
    spec.L = L;
    spec.N = n;
    spec.geometry = geometry;
    spec.measure = std::move(measure);
    spec.family_kind = family_kind;
    spec.family = standard_family(family_kind, n * L, seed);
    spec.threads = std::max(1, threads);
    check_guardrail(spec);
    return spec;
}

EnsembleCase select_case(const EnsembleSpec& spec) {
    if (spec.beta == spec.L * spec.L + 1) return EnsembleCase::l2_plus_one;
    if (spec.L % 2 == 0) return EnsembleCase::l2_even;
    return (spec.N % 2 == 0) ? EnsembleCase::l2_odd_n_even : EnsembleCase::l2_odd_n_odd;
}

ExtForm build_omega(const EnsembleSpec& spec, cplx x) {
    const int nl = spec.N * spec.L;
    if (spec.family.size() != nl) throw std::invalid_argument("build_omega: family size mismatch");
    const auto masks = multi_index_masks(nl, spec.L);
    std::vector<cplx> values(masks.size());
    parallel_for_chunks(static_cast<std::int64_t>(masks.size()), spec.threads,
                        [&](int, std::int64_t lo, std::int64_t hi) {
                            for (std::int64_t i = lo; i < hi; ++i)
                                values[static_cast<std::size_t>(i)] = wronskian(
                                    spec.family, MultiIndex(nl, masks[static_cast<std::size_t>(i)]), x);
                        });
    std::vector<ExtForm::Term> terms;
    terms.reserve(masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) terms.emplace_back(masks[i], values[i]);
    return ExtForm::from_terms(nl, spec.L, std::move(terms));
}

ExtForm integrated_omega(const EnsembleSpec& spec) {
    const int nl = spec.N * spec.L;
    const Expansions ex = expand_wronskians(spec);
    std::vector<cplx> moments(static_cast<std::size_t>(ex.max_degree) + 1);
    for (int k = 0; k <= ex.max_degree; ++k) moments[static_cast<std::size_t>(k)] = spec.measure.moment(k);

    std::vector<ExtForm::Term> terms;
    terms.reserve(ex.masks.size());
    for (std::size_t i = 0; i < ex.masks.size(); ++i) {
        cplx acc{};
        const auto& c = ex.coeffs[i];
        for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * moments[j];
        terms.emplace_back(ex.masks[i], acc);
    }
    return ExtForm::from_terms(nl, spec.L, std::move(terms));
}

ExtForm double_integral_form(const EnsembleSpec& spec, PairKernel kernel) {
    const EnsembleCase ecase = select_case(spec);
    if (kernel == PairKernel::ordering_sign &&
        !(ecase == EnsembleCase::l2_odd_n_even || ecase == EnsembleCase::l2_odd_n_odd))
        throw std::invalid_argument("double_integral_form: sign kernel needs odd L and beta = L^2");
    if (kernel == PairKernel::power_difference && ecase != EnsembleCase::l2_plus_one)
        throw std::invalid_argument("double_integral_form: power kernel needs beta = L^2 + 1");

    const int nl = spec.N * spec.L;
    const int dim = (ecase == EnsembleCase::l2_odd_n_odd) ? (spec.N + 1) * spec.L : nl;
    const Expansions ex = expand_wronskians(spec);
    const std::size_t count = ex.masks.size();

    // pairing values <f, g> contracted against local tables
    std::vector<cplx> pair_context;  // skew table or moment-contracted vectors
    int stride = 0;
    const int big_m = spec.N / 2;
    if (kernel == PairKernel::ordering_sign) {
        spec.measure.ensure_tables(ex.max_degree, ex.max_degree);
        stride = ex.max_degree + 1;
        pair_context.resize(static_cast<std::size_t>(stride) * stride);
        for (int j = 0; j <= ex.max_degree; ++j)
            for (int k = 0; k <= ex.max_degree; ++k)
                pair_context[static_cast<std::size_t>(j) * stride + k] = spec.measure.skew_moment(j, k);
    } else {
        // G_i(r) = sum_a c_i[a] M(a + r) for r = 0 .. 2M-1
        stride = 2 * big_m;
        std::vector<cplx> moments(static_cast<std::size_t>(ex.max_degree + stride));
        for (int k = 0; k < ex.max_degree + stride; ++k)
            moments[static_cast<std::size_t>(k)] = spec.measure.moment(k);
        pair_context.resize(count * static_cast<std::size_t>(stride));
        for (std::size_t i = 0; i < count; ++i) {
            const auto& c = ex.coeffs[i];
            for (int r = 0; r < stride; ++r) {
                cplx acc{};
                for (std::size_t a = 0; a < c.size(); ++a) acc += c[a] * moments[a + static_cast<std::size_t>(r)];
                pair_context[i * static_cast<std::size_t>(stride) + r] = acc;
            }
        }
    }

    auto pair_value = [&](std::size_t i1, std::size_t i2) -> cplx {
        if (kernel == PairKernel::ordering_sign) {
            // <f, g>_sgn = sum c_f[j] c_g[k] * 2 M(j, k)
            const auto& cf = ex.coeffs[i1];
            const auto& cg = ex.coeffs[i2];
            cplx acc{};
            for (std::size_t j = 0; j < cf.size(); ++j) {
                if (cf[j] == cplx{}) continue;
                cplx row{};
                const cplx* table_row = &pair_context[j * static_cast<std::size_t>(stride)];
                for (std::size_t k = 0; k < cg.size(); ++k) row += cg[k] * table_row[k];
                acc += cf[j] * row;
            }
            return 2.0 * acc;
        }
        const cplx* gf = &pair_context[i1 * static_cast<std::size_t>(stride)];
        const cplx* gg = &pair_context[i2 * static_cast<std::size_t>(stride)];
        cplx acc{};
        for (int q = 0; q < big_m; ++q)
            acc += gf[q] * gg[2 * big_m - 1 - q] - gf[big_m + q] * gg[big_m - 1 - q];
        return acc;
    };

    const int workers = std::max(1, spec.threads);
    std::vector<TermMap> partial(static_cast<std::size_t>(workers));
    parallel_for_chunks(
        static_cast<std::int64_t>(count), workers, [&](int chunk, std::int64_t lo, std::int64_t hi) {
            TermMap& acc = partial[static_cast<std::size_t>(chunk)];
            for (std::int64_t i1 = lo; i1 < hi; ++i1) {
                const std::uint64_t m1 = ex.masks[static_cast<std::size_t>(i1)];
                for (std::size_t i2 = 0; i2 < count; ++i2) {
                    const std::uint64_t m2 = ex.masks[i2];
                    if (m1 & m2) continue;
                    const int sign = concat_sign_pair(m1, m2);
                    const cplx v = pair_value(static_cast<std::size_t>(i1), i2);
                    acc[m1 | m2] += 0.5 * double(sign) * v;
                }
            }
        });
    TermMap acc;
    for (auto& p : partial)
        for (const auto& [k, v] : p) acc[k] += v;
    return map_to_sorted_form(dim, 2 * spec.L, acc);
}

ExtForm border_term(const EnsembleSpec& spec) {
    if (select_case(spec) != EnsembleCase::l2_odd_n_odd)
        throw std::invalid_argument("border_term: requires odd L, odd N, beta = L^2");
    const int nl = spec.N * spec.L;
    const int dim = (spec.N + 1) * spec.L;
    const ExtForm base = integrated_omega(spec);
    std::uint64_t eps_prime = 0;
    for (int i = nl; i < dim; ++i) eps_prime |= std::uint64_t{1} << i;

    std::vector<ExtForm::Term> terms;
    terms.reserve(base.size());
    for (const auto& [mask, value] : base.terms()) {
        // indices of epsilon' all exceed those of the base key: no sign
        terms.emplace_back(mask | eps_prime, value);
    }
    return ExtForm::from_terms(dim, 2 * spec.L, std::move(terms));
}

ZnResult partition_function(const EnsembleSpec& spec) {
    check_guardrail(spec);
    const EnsembleCase ecase = select_case(spec);
    const auto t0 = std::chrono::steady_clock::now();

    ExtForm form;
    switch (ecase) {
        case EnsembleCase::l2_even:
            form = integrated_omega(spec);
            break;
        case EnsembleCase::l2_odd_n_even:
            form = double_integral_form(spec, PairKernel::ordering_sign);
            break;
        case EnsembleCase::l2_odd_n_odd:
            form = double_integral_form(spec, PairKernel::ordering_sign) + border_term(spec);
            break;
        case EnsembleCase::l2_plus_one:
            form = double_integral_form(spec, PairKernel::power_difference);
            break;
    }

    ZnResult result;
    result.value = hyperpfaffian(form, spec.threads);
    result.ensemble_case = ecase;
    result.form_dimension = form.dim();
    result.form_degree = form.degree();
    result.beta = spec.beta;
    result.L = spec.L;
    result.N = spec.N;
    result.geometry = spec.geometry;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (spec.geometry == Geometry::real_line &&
        std::abs(result.value.imag()) > 1e-9 * (1.0 + std::abs(result.value.real())))
        throw std::runtime_error("partition_function: real ensemble produced a complex value");
    return result;
}

Matrix classical_matrices(const EnsembleSpec& spec) {
    if (spec.L > 2) throw std::invalid_argument("classical_matrices: L must be 1 or 2");
    const EnsembleCase ecase = select_case(spec);
    switch (ecase) {
        case EnsembleCase::l2_even:
            return matrix_from_form(integrated_omega(spec));  // beta = 4
        case EnsembleCase::l2_odd_n_even:
            return matrix_from_form(double_integral_form(spec, PairKernel::ordering_sign));
        case EnsembleCase::l2_odd_n_odd:
            return matrix_from_form(double_integral_form(spec, PairKernel::ordering_sign) +
                                    border_term(spec));  // bordered skew matrix
        case EnsembleCase::l2_plus_one:
            return matrix_from_form(double_integral_form(spec, PairKernel::power_difference));
    }
    throw std::logic_error("classical_matrices: unreachable");
}

double correlation(const EnsembleSpec& spec, const std::vector<double>& points) {
    const int n = static_cast<int>(points.size());
    if (n == 0) return 1.0;
    if (n > 3 || n > spec.N) throw std::invalid_argument("correlation: at most min(N, 3) points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (points[static_cast<std::size_t>(i)] == points[static_cast<std::size_t>(j)])
                throw std::invalid_argument("correlation: coincident points");

    const double z0 = partition_function(spec).value.real();
    double acc = 0.0;
    for (int subset = 0; subset < (1 << n); ++subset) {
        std::vector<std::pair<double, cplx>> atoms;
        for (int i = 0; i < n; ++i)
            if (subset & (1 << i)) atoms.emplace_back(points[static_cast<std::size_t>(i)], 1.0);
        EnsembleSpec perturbed = spec;
        perturbed.measure = spec.measure.with_atoms(atoms);
        const double sign = ((n - std::popcount(unsigned(subset))) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * partition_function(perturbed).value.real();
    }
    return acc / z0;
}

}  // namespace hpf
