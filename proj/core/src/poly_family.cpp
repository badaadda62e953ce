#include "hpf/poly_family.hpp"

#include <cmath>
#include <stdexcept>

#include "hpf/rng.hpp"

namespace hpf {

FamilyKind family_kind_from_string(const std::string& name) {
    if (name == "monomial") return FamilyKind::monomial;
    if (name == "hermite" || name == "hermite_monic") return FamilyKind::hermite_monic;
    if (name == "legendre" || name == "legendre_monic") return FamilyKind::legendre_monic;
    if (name == "random" || name == "random_monic") return FamilyKind::random_monic;
    throw std::invalid_argument("unknown polynomial family: " + name);
}

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::monomial: return "monomial";
        case FamilyKind::hermite_monic: return "hermite";
        case FamilyKind::legendre_monic: return "legendre";
        case FamilyKind::random_monic: return "random";
    }
    return "?";
}

CompleteFamily::CompleteFamily(std::vector<Polynomial> polys) : polys_(std::move(polys)) {
    for (std::size_t i = 0; i < polys_.size(); ++i) {
        const auto& p = polys_[i];
        if (p.degree() != static_cast<int>(i))
            throw std::invalid_argument("CompleteFamily: poly(n) must have degree n-1");
        if (std::abs(p.leading() - 1.0) > 1e-12)
            throw std::invalid_argument("CompleteFamily: polynomials must be monic");
    }
}

CompleteFamily standard_family(FamilyKind kind, int size, std::uint64_t seed) {
    if (size < 1) throw std::invalid_argument("standard_family: size must be >= 1");
    std::vector<Polynomial> polys;
    polys.reserve(static_cast<std::size_t>(size));
    switch (kind) {
        case FamilyKind::monomial:
            for (int n = 0; n < size; ++n) polys.push_back(Polynomial::monomial(n));
            break;
        case FamilyKind::hermite_monic: {
            Polynomial prev = Polynomial::constant(1.0);
            Polynomial cur = Polynomial::monomial(1);
            const Polynomial x = Polynomial::monomial(1);
            for (int n = 0; n < size; ++n) {
                if (n == 0) {
                    polys.push_back(prev);
                } else if (n == 1) {
                    polys.push_back(cur);
                } else {
                    Polynomial next = x * cur - cplx(double(n - 1)) * prev;
                    prev = cur;
                    cur = next;
                    polys.push_back(cur);
                }
            }
            break;
        }
        case FamilyKind::legendre_monic: {
            // monic: P_{n+1} = x P_n - n^2 / (4n^2 - 1) P_{n-1}
            Polynomial prev = Polynomial::constant(1.0);
            Polynomial cur = Polynomial::monomial(1);
            const Polynomial x = Polynomial::monomial(1);
            for (int n = 0; n < size; ++n) {
                if (n == 0) {
                    polys.push_back(prev);
                } else if (n == 1) {
                    polys.push_back(cur);
                } else {
                    const double m = n - 1;
                    Polynomial next = x * cur - cplx(m * m / (4.0 * m * m - 1.0)) * prev;
                    prev = cur;
                    cur = next;
                    polys.push_back(cur);
                }
            }
            break;
        }
        case FamilyKind::random_monic: {
            const CounterRng rng(seed);
            std::uint64_t counter = 0;
            for (int n = 0; n < size; ++n) {
                std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
                for (int j = 0; j < n; ++j) c[j] = rng.uniform(counter++, -1.0, 1.0);
                c[n] = 1.0;
                polys.emplace_back(std::move(c));
            }
            break;
        }
    }
    return CompleteFamily(std::move(polys));
}

}  // namespace hpf
