#include "siegel/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "siegel/gamma.hpp"
#include "siegel/geometry.hpp"

namespace siegel {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double kernel_constant(unsigned n) {
    return factorial(n) / (4.0 * std::pow(kPi, static_cast<double>(n)));
}

cplx principal_pow(cplx w, double e) {
    return std::exp(e * std::log(w));
}

cplx bergman_kernel(const CPoint& z, const CPoint& w) {
    require_interior(z, "bergman_kernel");
    require_interior(w, "bergman_kernel");
    const unsigned n = static_cast<unsigned>(z.dim());
    const cplx r = rho(z, w);
    // Integer exponent: cheaper and exact than the principal-log route.
    cplx rp(1.0, 0.0);
    for (unsigned k = 0; k <= n; ++k) rp *= r;
    return kernel_constant(n) / rp;
}

double kernel_diag(const CPoint& z) {
    require_interior(z, "kernel_diag");
    const unsigned n = static_cast<unsigned>(z.dim());
    return kernel_constant(n) * std::pow(rho(z), -(static_cast<double>(n) + 1.0));
}

cplx normalized_kernel(const CPoint& z, const CPoint& w) {
    return bergman_kernel(z, w) / std::sqrt(kernel_diag(z));
}

double normalized_kernel_abs2(const CPoint& z, const CPoint& w) {
    require_interior(z, "normalized_kernel_abs2");
    require_interior(w, "normalized_kernel_abs2");
    const unsigned n = static_cast<unsigned>(z.dim());
    const double np1 = static_cast<double>(n) + 1.0;
    return kernel_constant(n) * std::pow(rho(z), np1) /
           std::pow(std::norm(rho(z, w)), np1);
}

double forelli_rudin_constant(unsigned n, double s, double t) {
    const double np1 = static_cast<double>(n) + 1.0;
    if (!(t > -1.0) || !(s - t > np1)) return kInf;
    const double g = gamma_fn(s / 2.0);
    return 4.0 * std::pow(kPi, static_cast<double>(n)) * gamma_fn(1.0 + t) *
           gamma_fn(s - t - np1) / (g * g);
}

double forelli_rudin_integral(const CPoint& z, double s, double t) {
    require_interior(z, "forelli_rudin_integral");
    const unsigned n = static_cast<unsigned>(z.dim());
    const double c = forelli_rudin_constant(n, s, t);
    if (is_divergent(c)) return kInf;
    return c / std::pow(rho(z), s - t - static_cast<double>(n) - 1.0);
}

double kernel_norm_constant(unsigned n, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("kernel_norm_constant: p must be > 1");
    const double np1 = static_cast<double>(n) + 1.0;
    return kernel_constant(n) * std::pow(forelli_rudin_constant(n, p * np1, 0.0), 1.0 / p);
}

double kernel_norm(const CPoint& z, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("kernel_norm: p must be > 1");
    require_interior(z, "kernel_norm");
    const unsigned n = static_cast<unsigned>(z.dim());
    const double np1 = static_cast<double>(n) + 1.0;
    const double pprime = p / (p - 1.0);
    return kernel_norm_constant(n, p) * std::pow(rho(z), -np1 / pprime);
}

double kernel_bound_constant(unsigned n) {
    return std::pow(2.0, static_cast<double>(n) - 1.0) * factorial(n) /
           std::pow(kPi, static_cast<double>(n));
}

double growth_constant(unsigned n, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("growth_constant: p must be > 0");
    return std::pow(std::pow(4.0, static_cast<double>(n)) * factorial(n) /
                        std::pow(kPi, static_cast<double>(n)),
                    1.0 / p);
}

}  // namespace siegel
