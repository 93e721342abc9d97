#include "siegel/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

namespace {

// Lanczos coefficients for g = 7, 9 terms.
constexpr double kG = 7.0;
constexpr double kCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
constexpr double kSqrtTwoPi = 2.5066282746310005024157652848110;
constexpr double kPi = 3.1415926535897932384626433832795;

double lanczos_core(double z) {
    // Valid for z >= 0.5: Gamma(z) = sqrt(2 pi) t^(z-1/2) e^(-t) A(z),
    // t = z + g - 1/2.
    double acc = kCoef[0];
    for (int k = 1; k < 9; ++k) acc += kCoef[k] / (z + static_cast<double>(k) - 1.0);
    const double t = z + kG - 0.5;
    const double e = z - 0.5;
    if (e * std::log(t) > 640.0) {
        // t^e alone would overflow; square the half power instead.
        const double hp = std::pow(t, 0.5 * e);
        return kSqrtTwoPi * hp * std::exp(-t) * acc * hp;
    }
    return kSqrtTwoPi * std::pow(t, e) * std::exp(-t) * acc;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
    if (x > 170.0) throw std::range_error("gamma_fn: argument > 170 overflows");
    if (x >= 0.5) return lanczos_core(x);
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x). Here 0 < x < 1/2,
    // so sin(pi x) is well away from its zeros.
    return kPi / (std::sin(kPi * x) * lanczos_core(1.0 - x));
}

std::uint64_t factorial_exact(unsigned n) {
    if (n > 20) throw std::range_error("factorial_exact: n > 20 not representable in 64 bits");
    std::uint64_t f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

double factorial(unsigned n) { return static_cast<double>(factorial_exact(n)); }

}  // namespace siegel
