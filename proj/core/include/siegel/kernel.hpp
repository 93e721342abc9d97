#ifndef SIEGEL_KERNEL_HPP
#define SIEGEL_KERNEL_HPP

#include "siegel/point.hpp"

namespace siegel {

/// n!/(4 pi^n), the Bergman kernel normalization of the Siegel domain.
double kernel_constant(unsigned n);

/// Bergman kernel K(z, w) = n!/(4 pi^n) rho(z, w)^-(n+1).
cplx bergman_kernel(const CPoint& z, const CPoint& w);

/// K(z, z) = n!/(4 pi^n) rho(z)^-(n+1), real and positive.
double kernel_diag(const CPoint& z);

/// Normalized kernel k_z(w) = K(z, w)/sqrt(K(z, z)).
cplx normalized_kernel(const CPoint& z, const CPoint& w);

/// |k_z(w)|^2 = n!/(4 pi^n) rho(z)^(n+1) / |rho(z, w)|^(2(n+1)).
double normalized_kernel_abs2(const CPoint& z, const CPoint& w);

/// Closed form of the weighted integral
///   I(z; s, t) = int_U rho(w)^t / |rho(z, w)|^s dV(w)
///              = C(n, s, t) / rho(z)^(s - t - n - 1),
/// with C(n, s, t) = 4 pi^n Gamma(1+t) Gamma(s-t-n-1) / Gamma(s/2)^2.
/// Divergent parameter ranges (t <= -1 or s - t <= n + 1) return +infinity;
/// divergence is a value here, not an error.
double forelli_rudin_constant(unsigned n, double s, double t);
double forelli_rudin_integral(const CPoint& z, double s, double t);
inline bool is_divergent(double v) { return !(v < 1.0 / 0.0); }

/// The constant C(n, p) in ||K_z||_p = C(n, p) rho(z)^(-(n+1)/p'):
/// C(n, p) = (n!/(4 pi^n)) C(n, p(n+1), 0)^(1/p).
double kernel_norm_constant(unsigned n, double p);

/// L^p norm of the kernel function K_z = K(., z), p > 1, in closed form.
double kernel_norm(const CPoint& z, double p);

/// 2^(n-1) n!/pi^n, the constant in |K(z,w)| <= c min(rho(z),rho(w))^-(n+1).
double kernel_bound_constant(unsigned n);

/// (4^n n!/pi^n)^(1/p), the constant in the pointwise growth bound
/// |f(z)| <= c ||f||_p rho(z)^(-(n+1)/p).
double growth_constant(unsigned n, double p);

/// Principal-branch complex power w^e. Continuous wherever Re w > 0, which
/// holds for every rho(z, w) with both points interior.
cplx principal_pow(cplx w, double e);

}  // namespace siegel

#endif
