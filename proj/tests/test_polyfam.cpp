#include <doctest.h>

#include <cmath>
#include <vector>

#include "hpf/poly_family.hpp"
#include "hpf/rng.hpp"
#include "hpf/wronskian.hpp"

using hpf::CompleteFamily;
using hpf::cplx;
using hpf::FamilyKind;
using hpf::MultiIndex;
using hpf::Polynomial;

namespace {

Polynomial random_poly(int degree, hpf::CounterRng& rng, std::uint64_t& counter) {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = cplx(rng.uniform(counter++, -1.0, 1.0), rng.uniform(counter++, -1.0, 1.0));
    if (std::abs(c.back()) < 0.1) c.back() += 1.0;
    return Polynomial(std::move(c));
}

// Newton divided differences: interpolate through the samples and return
// the evaluation at x.
cplx newton_eval(const std::vector<double>& xs, const std::vector<cplx>& ys, double x) {
    std::vector<cplx> coef = ys;
    const std::size_t n = xs.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            coef[i] = (coef[i] - coef[i - 1]) / cplx(xs[i] - xs[i - level]);
    cplx acc = coef[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) acc = acc * cplx(x - xs[i]) + coef[i];
    return acc;
}

}  // namespace

TEST_CASE("modified derivative: stated cases") {
    const Polynomial x2 = Polynomial::monomial(2);
    CHECK(hpf::modified_derivative(x2, 1).coeffs() == std::vector<cplx>{0.0, 2.0});
    CHECK(hpf::modified_derivative(x2, 2).coeffs() == std::vector<cplx>{1.0});
    CHECK(hpf::modified_derivative(x2, 3).is_zero());
    CHECK_THROWS_AS(hpf::modified_derivative(x2, -1), std::invalid_argument);
}

TEST_CASE("modified derivative composition: D^a D^b = C(a+b, a) D^(a+b)") {
    hpf::CounterRng rng(11);
    std::uint64_t counter = 0;
    for (int rep = 0; rep < 10; ++rep) {
        const Polynomial p = random_poly(9, rng, counter);
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b) {
                const Polynomial lhs = hpf::modified_derivative(hpf::modified_derivative(p, b), a);
                Polynomial rhs = hpf::modified_derivative(p, a + b);
                rhs *= cplx(hpf::binomial(a + b, a));
                const Polynomial diff = lhs - rhs;
                double worst = 0.0;
                for (const cplx& c : diff.coeffs()) worst = std::max(worst, std::abs(c));
                CHECK(worst < 1e-12);
            }
    }
}

TEST_CASE("standard families") {
    const CompleteFamily mono = hpf::standard_family(FamilyKind::monomial, 3);
    CHECK(mono.poly(1).coeffs() == std::vector<cplx>{1.0});
    CHECK(mono.poly(3).coeffs() == std::vector<cplx>{0.0, 0.0, 1.0});

    const CompleteFamily herm = hpf::standard_family(FamilyKind::hermite_monic, 3);
    CHECK(herm.poly(3).coeffs() == std::vector<cplx>{-1.0, 0.0, 1.0});  // x^2 - 1

    const CompleteFamily leg = hpf::standard_family(FamilyKind::legendre_monic, 4);
    CHECK(std::abs(leg.poly(4).coeff(1) - cplx(-0.6)) < 1e-12);  // x^3 - (3/5) x

    const CompleteFamily r1 = hpf::standard_family(FamilyKind::random_monic, 5, 7);
    const CompleteFamily r2 = hpf::standard_family(FamilyKind::random_monic, 5, 7);
    for (int n = 1; n <= 5; ++n) {
        CHECK(r1.poly(n).coeffs() == r2.poly(n).coeffs());
        CHECK(r1.poly(n).leading() == cplx(1.0));
    }
    CHECK_THROWS_AS(hpf::standard_family(FamilyKind::monomial, 0), std::invalid_argument);
    CHECK_THROWS_AS(hpf::family_kind_from_string("chebyshev"), std::invalid_argument);
}

TEST_CASE("wronskian: stated cases") {
    for (int L = 1; L <= 4; ++L) {
        const CompleteFamily fam = hpf::standard_family(FamilyKind::monomial, 2 * L);
        std::uint64_t mask = (std::uint64_t{1} << L) - 1;  // t = (1, ..., L)
        CHECK(std::abs(hpf::wronskian(fam, MultiIndex(2 * L, mask), cplx(0.37, 0.2)) - cplx(1.0)) <
              1e-12);
    }
    const CompleteFamily fam = hpf::standard_family(FamilyKind::monomial, 4);
    const cplx x(1.3, -0.4);
    CHECK(std::abs(hpf::wronskian(fam, MultiIndex(4, {1, 3}), x) - 2.0 * x) < 1e-12);
    CHECK(std::abs(hpf::wronskian(fam, MultiIndex(4, {2, 3}), x) - x * x) < 1e-12);
    CHECK_THROWS_AS(hpf::wronskian(fam, MultiIndex(6, {5, 6}), x), std::invalid_argument);
}

TEST_CASE("wronskian polynomial expansion matches the numeric determinant") {
    hpf::CounterRng rng(23);
    std::uint64_t counter = 0;
    const FamilyKind kinds[] = {FamilyKind::monomial, FamilyKind::hermite_monic,
                                FamilyKind::legendre_monic, FamilyKind::random_monic};
    for (const auto kind : kinds) {
        const int nl = 9;
        const CompleteFamily fam = hpf::standard_family(kind, nl, 3);
        for (int rep = 0; rep < 10; ++rep) {
            std::uint64_t mask = 0;
            while (std::popcount(mask) != 3) mask = std::uint64_t(rng.uniform(counter++) * 512) & 0x1ff;
            const MultiIndex t(nl, mask);
            const Polynomial w = hpf::wronskian_polynomial(fam, t);
            const cplx x(rng.uniform(counter++, -1, 1), rng.uniform(counter++, -1, 1));
            CHECK(std::abs(w.eval(x) - hpf::wronskian(fam, t, x)) < 1e-10);
        }
    }
}

TEST_CASE("monomial wronskian closed form") {
    {
        const auto w = hpf::monomial_wronskian_closed_form(MultiIndex(4, {1, 2}));
        CHECK(w.constant == 1.0);
        CHECK(w.exponent == 0);
    }
    {
        // single entry t = (3): the direct determinant gives x^2 exactly
        const auto w = hpf::monomial_wronskian_closed_form(MultiIndex(4, {3}));
        CHECK(w.constant == 1.0);
        CHECK(w.exponent == 2);
    }
    {
        const auto w = hpf::monomial_wronskian_closed_form(MultiIndex(4, {1, 3}));
        CHECK(w.constant == 2.0);
        CHECK(w.exponent == 1);
    }
}

TEST_CASE("monomial closed form agrees with the direct determinant everywhere") {
    hpf::CounterRng rng(29);
    std::uint64_t counter = 0;
    for (int L = 1; L <= 4; ++L) {
        const int nl = 12;
        const CompleteFamily fam = hpf::standard_family(FamilyKind::monomial, nl);
        hpf::for_each_multi_index(nl, L, [&](std::uint64_t mask) {
            const MultiIndex t(nl, mask);
            const auto closed = hpf::monomial_wronskian_closed_form(t);
            for (int rep = 0; rep < 10; ++rep) {
                const cplx x(rng.uniform(counter++, -1.5, 1.5), 0.0);
                const cplx direct = hpf::wronskian(fam, t, x);
                const cplx predicted = closed.constant * std::pow(x, closed.exponent);
                CHECK(std::abs(direct - predicted) <= 1e-10 * (1.0 + std::abs(predicted)));
            }
        });
    }
}

TEST_CASE("wronskian degree via interpolation") {
    const FamilyKind kinds[] = {FamilyKind::monomial, FamilyKind::hermite_monic,
                                FamilyKind::legendre_monic, FamilyKind::random_monic};
    for (const auto kind : kinds) {
        for (int L = 1; L <= 3; ++L) {
            const int nl = 3 * L;
            const CompleteFamily fam = hpf::standard_family(kind, nl, 13);
            hpf::for_each_multi_index(nl, L, [&](std::uint64_t mask) {
                const MultiIndex t(nl, mask);
                int sum = 0;
                for (int e : t.elements()) sum += e;
                const int degree = sum - L * (L + 1) / 2;
                // sample degree + 1 points, interpolate, check a fresh point
                std::vector<double> xs;
                std::vector<cplx> ys;
                for (int i = 0; i <= degree; ++i) {
                    const double x = -1.0 + 2.0 * i / std::max(1, degree);
                    xs.push_back(x);
                    ys.push_back(hpf::wronskian(fam, t, x));
                }
                const double fresh = 0.7351;
                const cplx direct = hpf::wronskian(fam, t, fresh);
                const cplx interp = (degree == 0) ? ys[0] : newton_eval(xs, ys, fresh);
                CHECK(std::abs(direct - interp) <= 1e-8 * (1.0 + std::abs(direct)));
            });
        }
    }
}

TEST_CASE("wronskian is alternating in the rows") {
    const CompleteFamily fam = hpf::standard_family(FamilyKind::hermite_monic, 6);
    const cplx x(0.8, 0.0);
    // direct determinant with rows (2, 5) against (5, 2)
    auto det_for_rows = [&](int r1, int r2) {
        hpf::Matrix m(2, 2);
        m.at(0, 0) = fam.poly(r1).eval(x);
        m.at(0, 1) = hpf::modified_derivative(fam.poly(r1), 1).eval(x);
        m.at(1, 0) = fam.poly(r2).eval(x);
        m.at(1, 1) = hpf::modified_derivative(fam.poly(r2), 1).eval(x);
        return m.determinant();
    };
    CHECK(std::abs(det_for_rows(2, 5) + det_for_rows(5, 2)) < 1e-12);
    CHECK(std::abs(det_for_rows(2, 5) - hpf::wronskian(fam, MultiIndex(6, {2, 5}), x)) < 1e-12);
}

TEST_CASE("vandermonde block") {
    const CompleteFamily fam = hpf::standard_family(FamilyKind::monomial, 4);
    const hpf::Matrix slab1 = hpf::vandermonde_block(fam, cplx(0.5), 1);
    CHECK(slab1.rows() == 4);
    CHECK(slab1.cols() == 1);
    for (int n = 0; n < 4; ++n) CHECK(slab1.at(n, 0) == fam.poly(n + 1).eval(0.5));

    const cplx x(0.5);
    const hpf::Matrix slab2 = hpf::vandermonde_block(fam, x, 2);
    CHECK(slab2.at(0, 1) == cplx(0.0));
    CHECK(slab2.at(1, 1) == cplx(1.0));
    CHECK(std::abs(slab2.at(2, 1) - 2.0 * x) < 1e-15);
    CHECK(std::abs(slab2.at(3, 1) - 3.0 * x * x) < 1e-15);
}

TEST_CASE("complete family validation") {
    CHECK_THROWS_AS(CompleteFamily({Polynomial::monomial(1)}), std::invalid_argument);
    std::vector<Polynomial> bad = {Polynomial::constant(1.0), Polynomial::monomial(1, 2.0)};
    CHECK_THROWS_AS(CompleteFamily(std::move(bad)), std::invalid_argument);
}
