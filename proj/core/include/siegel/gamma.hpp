#ifndef SIEGEL_GAMMA_HPP
#define SIEGEL_GAMMA_HPP

#include <cstdint>

namespace siegel {

/// Gamma function for positive real arguments, Lanczos approximation with
/// fixed coefficients (g = 7, 9 terms). Relative error <= 1e-12 on
/// [1e-3, 170]. Throws std::domain_error for x <= 0 and std::range_error
/// for x > 170 (double overflow is near 171.6).
double gamma_fn(double x);

/// Exact n! in integer arithmetic, n <= 20; larger n rejected.
std::uint64_t factorial_exact(unsigned n);

/// n! as double (through factorial_exact).
double factorial(unsigned n);

}  // namespace siegel

#endif
