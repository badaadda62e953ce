#include "hpf/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hpf {

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma: argument must be positive");
    static constexpr double g = 7.0;
    static constexpr double coeffs[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // reflection keeps the series in its accurate range
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double sum = coeffs[0];
    for (int i = 1; i < 9; ++i) sum += coeffs[i] / (z + i);
    const double t = z + g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double double_factorial(int n) noexcept {
    double v = 1.0;
    for (int i = n; i > 1; i -= 2) v *= i;
    return v;
}

double factorial(int n) noexcept {
    double v = 1.0;
    for (int i = 2; i <= n; ++i) v *= i;
    return v;
}

}  // namespace hpf
