#include <doctest.h>

#include <algorithm>
#include <vector>

#include "hpf/ext_form.hpp"
#include "hpf/matrix.hpp"
#include "hpf/multi_index.hpp"
#include "hpf/rng.hpp"

using hpf::cplx;
using hpf::ExtForm;
using hpf::Matrix;
using hpf::MultiIndex;

namespace {

// sort-and-count oracle for concatenation parity
int brute_force_sign(const std::vector<MultiIndex>& parts) {
    std::vector<int> seq;
    for (const auto& p : parts)
        for (int e : p.elements()) seq.push_back(e);
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
    int inversions = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inversions;
    return inversions % 2 ? -1 : 1;
}

ExtForm random_form(int dim, int degree, hpf::CounterRng& rng, std::uint64_t& counter,
                    bool complex_coeffs = true) {
    std::vector<ExtForm::Term> terms;
    hpf::for_each_multi_index(dim, degree, [&](std::uint64_t m) {
        const double re = rng.uniform(counter++, -1.0, 1.0);
        const double im = complex_coeffs ? rng.uniform(counter++, -1.0, 1.0) : 0.0;
        terms.emplace_back(m, cplx(re, im));
    });
    return ExtForm::from_terms(dim, degree, std::move(terms));
}

Matrix random_antisymmetric(int order, hpf::CounterRng& rng, std::uint64_t& counter) {
    Matrix a(order, order);
    for (int i = 0; i < order; ++i)
        for (int j = i + 1; j < order; ++j) {
            const double v = rng.uniform(counter++, -1.0, 1.0);
            a.at(i, j) = v;
            a.at(j, i) = -v;
        }
    return a;
}

double form_distance(const ExtForm& a, const ExtForm& b) {
    double worst = 0.0;
    for (const auto& [mask, v] : a.terms()) worst = std::max(worst, std::abs(v - b.coefficient(mask)));
    for (const auto& [mask, v] : b.terms()) worst = std::max(worst, std::abs(v - a.coefficient(mask)));
    return worst;
}

}  // namespace

TEST_CASE("multi-index basics") {
    const MultiIndex t(6, {1, 3, 5});
    CHECK(t.degree() == 3);
    CHECK(t.elements() == std::vector<int>{1, 3, 5});
    CHECK(t.contains(3));
    CHECK(!t.contains(2));
    CHECK(MultiIndex::full(6).degree() == 6);
    CHECK_THROWS_AS(MultiIndex(4, {5}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex(65, {1}), std::invalid_argument);
}

TEST_CASE("sign of concatenation: stated cases") {
    CHECK(hpf::sign_of_concatenation({MultiIndex(4, {1, 2}), MultiIndex(4, {3, 4})}) == 1);
    CHECK(hpf::sign_of_concatenation({MultiIndex(4, {1, 3}), MultiIndex(4, {2, 4})}) == -1);
    CHECK(hpf::sign_of_concatenation({MultiIndex(4, {1, 2}), MultiIndex(4, {2, 3})}) == 0);
    CHECK_THROWS_AS(hpf::sign_of_concatenation({MultiIndex(4, {1}), MultiIndex(6, {2})}),
                    std::invalid_argument);
}

TEST_CASE("sign of concatenation agrees with the sort-and-count oracle") {
    // exhaustive two-part splits through dim 5
    for (int dim = 2; dim <= 5; ++dim) {
        const std::uint64_t limit = std::uint64_t{1} << dim;
        for (std::uint64_t s = 1; s < limit; ++s)
            for (std::uint64_t t = 1; t < limit; ++t) {
                const MultiIndex a(dim, s), b(dim, t);
                CHECK(hpf::sign_of_concatenation({a, b}) == brute_force_sign({a, b}));
            }
    }
    // random three-part splits at dim 10
    hpf::CounterRng rng(5);
    std::uint64_t counter = 0;
    for (int rep = 0; rep < 500; ++rep) {
        std::uint64_t masks[3] = {0, 0, 0};
        for (int e = 0; e < 10; ++e) {
            const int slot = int(rng.uniform(counter++) * 4);
            if (slot < 3) masks[slot] |= std::uint64_t{1} << e;
        }
        if (masks[0] == 0 || masks[1] == 0 || masks[2] == 0) continue;
        const std::vector<MultiIndex> parts = {MultiIndex(10, masks[0]), MultiIndex(10, masks[1]),
                                               MultiIndex(10, masks[2])};
        CHECK(hpf::sign_of_concatenation(parts) == brute_force_sign(parts));
    }
}

TEST_CASE("wedge: basis cases") {
    const int dim = 4;
    ExtForm e12(dim, 2), e34(dim, 2), e13(dim, 2), e24(dim, 2);
    e12.add_term(MultiIndex(dim, {1, 2}), 1.0);
    e34.add_term(MultiIndex(dim, {3, 4}), 1.0);
    e13.add_term(MultiIndex(dim, {1, 3}), 1.0);
    e24.add_term(MultiIndex(dim, {2, 4}), 1.0);

    CHECK(hpf::wedge(e12, e34).coefficient(MultiIndex::full(dim)) == cplx(1.0));
    CHECK(hpf::wedge(e13, e24).coefficient(MultiIndex::full(dim)) == cplx(-1.0));

    CHECK_THROWS_AS(hpf::wedge(e12, ExtForm(6, 2)), std::invalid_argument);
    CHECK_THROWS_AS(hpf::wedge(hpf::wedge(e12, e34), e13), std::invalid_argument);
}

TEST_CASE("wedge: graded commutativity, associativity, multilinearity") {
    hpf::CounterRng rng(99);
    std::uint64_t counter = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const ExtForm a = random_form(7, 2, rng, counter);
        const ExtForm b = random_form(7, 3, rng, counter);
        const ExtForm c = random_form(7, 2, rng, counter);

        ExtForm ba = hpf::wedge(b, a);
        ba *= std::pow(-1.0, a.degree() * b.degree());
        CHECK(form_distance(hpf::wedge(a, b), ba) < 1e-12);

        CHECK(form_distance(hpf::wedge(hpf::wedge(a, b), c), hpf::wedge(a, hpf::wedge(b, c))) <
              1e-12);

        const cplx lambda(0.7, -0.3);
        CHECK(form_distance(hpf::wedge(lambda * a, b), lambda * hpf::wedge(a, b)) < 1e-12);
    }
}

TEST_CASE("wedge_power: stated cases") {
    ExtForm e12(4, 2);
    e12.add_term(MultiIndex(4, {1, 2}), 1.0);
    CHECK(hpf::wedge_power(e12, 2).is_zero());

    ExtForm sym(4, 2);
    sym.add_term(MultiIndex(4, {1, 2}), 1.0);
    sym.add_term(MultiIndex(4, {3, 4}), 1.0);
    CHECK(hpf::wedge_power(sym, 2).coefficient(MultiIndex::full(4)) == cplx(2.0));

    CHECK(hpf::wedge_power(sym, 0).coefficient(std::uint64_t{0}) == cplx(1.0));
    CHECK_THROWS_AS(hpf::wedge_power(sym, 3), std::invalid_argument);
}

TEST_CASE("wedge_power is a plain left fold (path independence)") {
    hpf::CounterRng rng(31);
    std::uint64_t counter = 0;
    const ExtForm a = random_form(6, 2, rng, counter);
    const ExtForm folded = hpf::wedge_power(a, 3);
    const ExtForm manual = hpf::wedge(hpf::wedge(hpf::wedge(ExtForm::scalar(6, 1.0), a), a), a);
    REQUIRE(folded.size() == manual.size());
    for (std::size_t i = 0; i < folded.size(); ++i) {
        CHECK(folded.terms()[i].first == manual.terms()[i].first);
        CHECK(folded.terms()[i].second == manual.terms()[i].second);  // bit identical
    }
}

TEST_CASE("hyperpfaffian: stated cases") {
    ExtForm single(2, 2);
    single.add_term(MultiIndex(2, {1, 2}), cplx(3.5, -1.0));
    CHECK(hpf::hyperpfaffian(single) == cplx(3.5, -1.0));

    // classical three-term expansion for an antisymmetric 4x4
    hpf::CounterRng rng(17);
    std::uint64_t counter = 0;
    const Matrix a = random_antisymmetric(4, rng, counter);
    const cplx expected = a.at(0, 1) * a.at(2, 3) - a.at(0, 2) * a.at(1, 3) + a.at(0, 3) * a.at(1, 2);
    CHECK(std::abs(hpf::hyperpfaffian(hpf::form_from_matrix(a)) - expected) < 1e-14);

    CHECK_THROWS_AS(hpf::hyperpfaffian(random_form(5, 2, rng, counter)), std::invalid_argument);
}

TEST_CASE("hyperpfaffian equals pfaffian on antisymmetric matrices") {
    hpf::CounterRng rng(1234);
    std::uint64_t counter = 0;
    for (int order = 2; order <= 12; order += 2) {
        for (int rep = 0; rep < 12; ++rep) {
            const Matrix a = random_antisymmetric(order, rng, counter);
            const cplx pf = hpf::pfaffian(a);
            const cplx hp = hpf::hyperpfaffian(hpf::form_from_matrix(a));
            CHECK(std::abs(pf - hp) <= 1e-10 * std::max(1.0, std::abs(pf)));
        }
    }
}

TEST_CASE("pfaffian: stated cases and error paths") {
    Matrix a(2, 2);
    a.at(0, 1) = cplx(2.5);
    a.at(1, 0) = cplx(-2.5);
    CHECK(hpf::pfaffian(a) == cplx(2.5));

    Matrix block(4, 4);
    block.at(0, 1) = 1.0;
    block.at(1, 0) = -1.0;
    block.at(2, 3) = 1.0;
    block.at(3, 2) = -1.0;
    CHECK(hpf::pfaffian(block) == cplx(1.0));

    CHECK_THROWS_AS(hpf::pfaffian(Matrix(3, 3)), std::invalid_argument);
    Matrix bad(2, 2);
    bad.at(0, 1) = 1.0;
    bad.at(1, 0) = 1.0;
    CHECK_THROWS_AS(hpf::pfaffian(bad), std::invalid_argument);
}

TEST_CASE("pfaffian squared equals the determinant") {
    hpf::CounterRng rng(4242);
    std::uint64_t counter = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const int order = 2 * (1 + int(rng.uniform(counter++) * 5));
        const Matrix a = random_antisymmetric(order, rng, counter);
        const cplx pf = hpf::pfaffian(a);
        const cplx det = a.determinant();
        CHECK(std::abs(pf * pf - det) <= 1e-9 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("form/matrix round trips") {
    Matrix a(2, 2);
    a.at(0, 1) = cplx(0.75);
    a.at(1, 0) = cplx(-0.75);
    CHECK(hpf::form_from_matrix(a).coefficient(MultiIndex(2, {1, 2})) == cplx(0.75));
    CHECK(hpf::form_from_matrix(Matrix::zero(3)).is_zero());
    CHECK(hpf::matrix_from_form(ExtForm(3, 2)).max_abs() == 0.0);

    hpf::CounterRng rng(7);
    std::uint64_t counter = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const int order = 2 + int(rng.uniform(counter++) * 7);
        const Matrix m = random_antisymmetric(order, rng, counter);
        const Matrix back = hpf::matrix_from_form(hpf::form_from_matrix(m));
        for (int i = 0; i < order; ++i)
            for (int j = 0; j < order; ++j) CHECK(back.at(i, j) == m.at(i, j));

        const ExtForm g = random_form(6, 2, rng, counter);
        CHECK(form_distance(hpf::form_from_matrix(hpf::matrix_from_form(g)), g) == 0.0);
    }

    CHECK_THROWS_AS(hpf::matrix_from_form(ExtForm(4, 3)), std::invalid_argument);
}

TEST_CASE("wedge results do not depend on the worker count") {
    hpf::CounterRng rng(88);
    std::uint64_t counter = 0;
    const ExtForm a = random_form(14, 2, rng, counter);  // large enough to split
    const ExtForm b = random_form(14, 4, rng, counter);
    const ExtForm serial = hpf::wedge(a, b, 1);
    const ExtForm parallel = hpf::wedge(a, b, 4);
    CHECK(form_distance(serial, parallel) < 1e-12);
}
