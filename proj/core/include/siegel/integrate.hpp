#ifndef SIEGEL_INTEGRATE_HPP
#define SIEGEL_INTEGRATE_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "siegel/point.hpp"
#include "siegel/region.hpp"

namespace siegel {

enum class Strategy { mc_ball_pullback, mc_region, stratified_shell };

const char* strategy_name(Strategy s);

struct IntegrationResult {
    cplx value{0.0, 0.0};
    double std_error = 0.0;
    std::int64_t samples = 0;
    Strategy strategy = Strategy::mc_ball_pullback;
    bool divergent = false;

    double real_value() const { return value.real(); }
};

/// Number of Monte-Carlo workers: min(hardware, SIEGEL_BERGMAN_THREADS).
/// Worker count never changes results, only wall time.
unsigned default_workers();

using Integrand = std::function<cplx(const CPoint&)>;

/// int_U f dV by exact change of variables onto the unit ball:
/// int_B f(Phi(xi)) 4/|1+xi_n|^(2(n+1)) dV(xi), xi uniform, scaled by
/// vol(B) = pi^n/n!. No truncation of the unbounded domain is involved.
/// Deterministic per (f, dim, count, seed) and independent of worker count.
IntegrationResult integrate_siegel(const Integrand& f, std::size_t dim, std::size_t count,
                                   std::uint64_t seed, unsigned workers = 0);

/// Same estimator restricted by the region indicator.
IntegrationResult integrate_region(const Integrand& f, const RegionSpec& region,
                                   std::size_t dim, std::size_t count, std::uint64_t seed,
                                   unsigned workers = 0);

/// int_U f(w) |k_base(w)|^2 dV(w), where k_base is the normalized kernel at
/// the base point. That weight pulls back to exactly the uniform measure of
/// the unit ball, so the estimator is the plain average of f over Cayley
/// images of uniform ball points (zero variance for constant f).
IntegrationResult kernel_weighted_average(const Integrand& f, std::size_t dim,
                                          std::size_t count, std::uint64_t seed,
                                          unsigned workers = 0);

/// Shell-stratified variant for boundary-sensitive integrands. Every dyadic
/// height shell [2^k, 2^(k+1)) is rescaled onto the reference band
/// {1 <= rho < 2} by the nonisotropic dilation (whose Jacobian is the exact
/// power 2^(k(n+1))), so deep and far shells are sampled as well as the
/// middle one. Divergence shows up as non-decaying outer contributions and
/// is flagged, never silently truncated; convergent tails beyond the
/// resolved range are closed off by geometric extrapolation.
struct ShellContribution {
    double rho_lo = 0.0;
    double rho_hi = 0.0;
    double value = 0.0;      // real part of the shell integral
    double magnitude = 0.0;  // |shell integral|, what the trend rules read
    double std_error = 0.0;
};

struct ShellProfile {
    std::vector<ShellContribution> toward_zero;      // rho in [2^-k-1, 2^-k)
    std::vector<ShellContribution> toward_infinity;  // rho in [2^k, 2^k+1)
    double tail_zero = 0.0;      // extrapolated mass below the resolved range
    double tail_infinity = 0.0;  // extrapolated mass above it
};

/// Geometric non-decay of the outermost shells in either direction.
bool shells_indicate_divergence(const ShellProfile& profile);

IntegrationResult integrate_with_shells(const Integrand& f, const RegionSpec& region,
                                        std::size_t dim, std::size_t count,
                                        std::uint64_t seed, int shell_depth,
                                        ShellProfile& profile, unsigned workers = 0);

}  // namespace siegel

#endif
