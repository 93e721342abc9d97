#ifndef SIEGEL_GEOMETRY_HPP
#define SIEGEL_GEOMETRY_HPP

#include "siegel/point.hpp"

namespace siegel {

/// Defining height of the Siegel domain: rho(z) = Im z_n - |z'|^2.
/// Positive iff z is interior, zero on the finite boundary.
double rho(const CPoint& z);

/// Sesquilinear extension rho(z, w) = (i/2)(conj(w_n) - z_n) - z'.conj(w').
/// Diagonal recovers rho(z); conjugate-symmetric; Re rho(z,w) > 0 on
/// interior pairs, which is what makes principal powers of it continuous.
cplx rho(const CPoint& z, const CPoint& w);

inline bool is_interior(const CPoint& z) { return rho(z) > 0.0; }

/// Throws std::domain_error unless rho(z) > 0.
void require_interior(const CPoint& z, const char* who);

/// Cayley transform of the unit ball onto the Siegel domain:
/// (xi', xi_n) -> (xi'/(1+xi_n), i(1-xi_n)/(1+xi_n)).
CPoint cayley(const BallPoint& xi);

/// Allocation-free variant for sampling loops; out is resized once.
void cayley_into(const BallPoint& xi, CPoint& out);

/// Inverse transform z -> (2iz'/(i+z_n), (i-z_n)/(i+z_n)).
BallPoint cayley_inverse(const CPoint& z);

/// Real Jacobian of the Cayley transform at xi: 4/|1+xi_n|^(2(n+1)).
double cayley_jacobian(const BallPoint& xi);

/// Real Jacobian of the inverse at z: 1/(4 |rho(z, i)|^(2(n+1))).
double cayley_inverse_jacobian(const CPoint& z);

/// Nonisotropic dilation: u -> (t u', t^2 u_n), t > 0.
CPoint dilate(double t, const CPoint& u);

/// Affine automorphism determined by z that moves z onto the vertical axis:
/// u -> (u' - z', u_n - Re z_n - 2i u'.conj(z') + i|z'|^2). Preserves rho.
CPoint recenter(const CPoint& z, const CPoint& u);

/// Inverse of recenter(z, .).
CPoint recenter_inverse(const CPoint& z, const CPoint& u);

/// The automorphism taking z to the base point (0', i), applied to u:
/// the dilation by rho(z)^(-1/2) after recentering.
CPoint normalize_to_base(const CPoint& z, const CPoint& u);

/// Inverse of normalize_to_base(z, .). Its complex Jacobian is the constant
/// rho(z)^((n+1)/2), so it maps uniform samples to uniform samples.
CPoint normalize_from_base(const CPoint& z, const CPoint& u);

/// Ball Moebius involution phi_xi(eta) exchanging 0 and xi.
BallPoint moebius(const BallPoint& xi, const BallPoint& eta);

/// rho(z, base_point): equals -i(z_n + i)/2, so 2|rho(z, i)| = |z_n + i|.
cplx rho_base(const CPoint& z);

}  // namespace siegel

#endif
