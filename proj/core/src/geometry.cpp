#include "siegel/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

namespace {
const cplx kImag(0.0, 1.0);
}

double rho(const CPoint& z) {
    double s = z.zn().imag();
    for (const cplx& c : z.zprime()) s -= std::norm(c);
    return s;
}

cplx rho(const CPoint& z, const CPoint& w) {
    if (z.dim() != w.dim())
        throw std::invalid_argument("rho(z,w): dimension mismatch");
    cplx s = cplx(0.0, 0.5) * (std::conj(w.zn()) - z.zn());
    const auto& zp = z.zprime();
    const auto& wp = w.zprime();
    for (std::size_t k = 0; k < zp.size(); ++k) s -= zp[k] * std::conj(wp[k]);
    return s;
}

void require_interior(const CPoint& z, const char* who) {
    if (!(rho(z) > 0.0))
        throw std::domain_error(std::string(who) + ": point not in the Siegel domain");
}

CPoint cayley(const BallPoint& xi) {
    const cplx denom = 1.0 + xi.last();
    if (std::abs(denom) == 0.0)
        throw std::domain_error("cayley: pole at xi_n = -1");
    const std::size_t n = xi.dim();
    std::vector<cplx> zp(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) zp[k] = xi.coords()[k] / denom;
    const cplx zn = kImag * (1.0 - xi.last()) / denom;
    return CPoint(std::move(zp), zn);
}

void cayley_into(const BallPoint& xi, CPoint& out) {
    const cplx denom = 1.0 + xi.last();
    if (std::abs(denom) == 0.0)
        throw std::domain_error("cayley: pole at xi_n = -1");
    const std::size_t n = xi.dim();
    std::vector<cplx>& zp = out.zprime_mut();
    zp.resize(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) zp[k] = xi.coords()[k] / denom;
    out.set_zn(kImag * (1.0 - xi.last()) / denom);
}

BallPoint cayley_inverse(const CPoint& z) {
    require_interior(z, "cayley_inverse");
    const cplx denom = kImag + z.zn();
    const std::size_t n = z.dim();
    std::vector<cplx> c(n);
    for (std::size_t k = 0; k + 1 < n; ++k) c[k] = 2.0 * kImag * z.zprime()[k] / denom;
    c[n - 1] = (kImag - z.zn()) / denom;
    return BallPoint::unchecked(std::move(c));
}

double cayley_jacobian(const BallPoint& xi) {
    const double a = std::abs(1.0 + xi.last());
    if (a == 0.0) throw std::domain_error("cayley_jacobian: pole at xi_n = -1");
    const double n = static_cast<double>(xi.dim());
    return 4.0 / std::pow(a * a, n + 1.0);
}

double cayley_inverse_jacobian(const CPoint& z) {
    require_interior(z, "cayley_inverse_jacobian");
    const double a2 = std::norm(rho_base(z));
    const double n = static_cast<double>(z.dim());
    return 1.0 / (4.0 * std::pow(a2, n + 1.0));
}

CPoint dilate(double t, const CPoint& u) {
    if (!(t > 0.0)) throw std::invalid_argument("dilate: t must be > 0");
    std::vector<cplx> zp(u.zprime());
    for (cplx& c : zp) c *= t;
    return CPoint(std::move(zp), (t * t) * u.zn());
}

CPoint recenter(const CPoint& z, const CPoint& u) {
    if (z.dim() != u.dim())
        throw std::invalid_argument("recenter: dimension mismatch");
    std::vector<cplx> up(u.zprime());
    cplx cross(0.0, 0.0);
    double zp2 = 0.0;
    for (std::size_t k = 0; k < up.size(); ++k) {
        cross += u.zprime()[k] * std::conj(z.zprime()[k]);
        zp2 += std::norm(z.zprime()[k]);
        up[k] -= z.zprime()[k];
    }
    const cplx un = u.zn() - z.zn().real() - 2.0 * kImag * cross + kImag * zp2;
    return CPoint(std::move(up), un);
}

CPoint recenter_inverse(const CPoint& z, const CPoint& u) {
    if (z.dim() != u.dim())
        throw std::invalid_argument("recenter_inverse: dimension mismatch");
    std::vector<cplx> up(u.zprime());
    cplx cross(0.0, 0.0);
    double zp2 = 0.0;
    for (std::size_t k = 0; k < up.size(); ++k) {
        up[k] += z.zprime()[k];
        cross += u.zprime()[k] * std::conj(z.zprime()[k]);
        zp2 += std::norm(z.zprime()[k]);
    }
    const cplx un = u.zn() + z.zn().real() + 2.0 * kImag * cross + kImag * zp2;
    return CPoint(std::move(up), un);
}

CPoint normalize_to_base(const CPoint& z, const CPoint& u) {
    require_interior(z, "normalize_to_base");
    return dilate(1.0 / std::sqrt(rho(z)), recenter(z, u));
}

CPoint normalize_from_base(const CPoint& z, const CPoint& u) {
    require_interior(z, "normalize_from_base");
    return recenter_inverse(z, dilate(std::sqrt(rho(z)), u));
}

BallPoint moebius(const BallPoint& xi, const BallPoint& eta) {
    if (xi.dim() != eta.dim())
        throw std::invalid_argument("moebius: dimension mismatch");
    const double xi2 = xi.abs2();
    if (xi2 >= 1.0) throw std::domain_error("moebius: |xi| must be < 1");
    const std::size_t n = xi.dim();
    std::vector<cplx> out(n);
    if (xi2 == 0.0) {
        for (std::size_t k = 0; k < n; ++k) out[k] = -eta.coords()[k];
        return BallPoint::unchecked(std::move(out));
    }
    // P eta = (eta.conj(xi)/|xi|^2) xi, Q eta = eta - P eta,
    // phi_xi(eta) = (xi - P eta - sqrt(1-|xi|^2) Q eta) / (1 - eta.conj(xi)).
    cplx ip(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) ip += eta.coords()[k] * std::conj(xi.coords()[k]);
    const cplx pscale = ip / xi2;
    const double s = std::sqrt(1.0 - xi2);
    const cplx denom = 1.0 - ip;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx p = pscale * xi.coords()[k];
        const cplx q = eta.coords()[k] - p;
        out[k] = (xi.coords()[k] - p - s * q) / denom;
    }
    return BallPoint::unchecked(std::move(out));
}

cplx rho_base(const CPoint& z) {
    return cplx(0.0, -0.5) * (z.zn() + kImag);
}

}  // namespace siegel
