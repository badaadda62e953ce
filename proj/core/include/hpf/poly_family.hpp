#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpf/polynomial.hpp"

namespace hpf {

enum class FamilyKind { monomial, hermite_monic, legendre_monic, random_monic };

FamilyKind family_kind_from_string(const std::string& name);
std::string to_string(FamilyKind kind);

/// A complete family of monic polynomials: poly(n) is monic of degree
/// n - 1 for n = 1..size.
class CompleteFamily {
public:
    CompleteFamily() = default;
    explicit CompleteFamily(std::vector<Polynomial> polys);

    int size() const noexcept { return static_cast<int>(polys_.size()); }
    /// 1-based, matching multi-index values.
    const Polynomial& poly(int n) const { return polys_.at(static_cast<std::size_t>(n) - 1); }

private:
    std::vector<Polynomial> polys_;
};

/// monomial: {1, x, x^2, ...}
/// hermite_monic: He with He_{n+1} = x He_n - n He_{n-1}
/// legendre_monic: monic Legendre via the three-term recurrence
/// random_monic: sub-leading coefficients uniform in [-1, 1], seeded
CompleteFamily standard_family(FamilyKind kind, int size, std::uint64_t seed = 0);

}  // namespace hpf
