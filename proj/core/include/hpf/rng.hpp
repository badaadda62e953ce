#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hpf {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: every draw is a pure function of
/// (seed, counter), so sample i can be produced on any thread, in any
/// order, with identical results.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    /// Uniform in (0, 1].
    double uniform(std::uint64_t counter) const noexcept {
        const std::uint64_t h = mix64(seed_ ^ (counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const noexcept {
        return lo + (hi - lo) * (uniform(counter) - 0x1.0p-53);
    }

    /// Standard normal via Box-Muller on counters (2c, 2c+1).
    double normal(std::uint64_t counter) const noexcept {
        const double u1 = uniform(2 * counter);
        const double u2 = uniform(2 * counter + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

}  // namespace hpf
