#pragma once

namespace hpf {

/// ln Gamma(x) for x > 0, Lanczos approximation (g = 7), relative error
/// well below 1e-12 over the range used here.
double log_gamma(double x);

/// (n)!! with (-1)!! = 0!! = 1.
double double_factorial(int n) noexcept;

/// n! as a double.
double factorial(int n) noexcept;

}  // namespace hpf
