#ifndef SIEGEL_MEASURE_HPP
#define SIEGEL_MEASURE_HPP

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "siegel/integrate.hpp"
#include "siegel/point.hpp"
#include "siegel/region.hpp"

namespace siegel {

/// Toeplitz symbols: positive Borel measures given as weighted atoms, a
/// named density against Lebesgue measure, or restricted Lebesgue measure.
class MeasureSpec {
public:
    struct Atom {
        CPoint point;
        double weight = 1.0;
    };
    enum class DensityFamily { rho_power, constant };

    static MeasureSpec atomic(std::size_t dim, std::vector<Atom> atoms);
    static MeasureSpec density(std::size_t dim, DensityFamily family, double param,
                               std::optional<RegionSpec> restriction = std::nullopt);
    static MeasureSpec lebesgue(std::size_t dim,
                                std::optional<RegionSpec> restriction = std::nullopt);

    std::size_t dim() const { return dim_; }
    bool is_atomic() const { return kind_ == Kind::atomic; }
    bool is_lebesgue() const { return kind_ == Kind::lebesgue; }
    bool is_density() const { return kind_ == Kind::density; }

    const std::vector<Atom>& atoms() const;
    DensityFamily family() const { return family_; }
    double family_param() const { return param_; }
    const std::optional<RegionSpec>& restriction() const { return restriction_; }

    /// Radon-Nikodym value against Lebesgue measure at w (density and
    /// lebesgue kinds; zero outside the restriction).
    double density_at(const CPoint& w) const;

    /// Whole measure supported inside a metrically bounded region?
    bool compactly_supported() const;

    enum class Kind { atomic, density, lebesgue };
    Kind kind() const { return kind_; }

private:
    MeasureSpec() = default;

    Kind kind_ = Kind::lebesgue;
    std::size_t dim_ = 1;
    std::vector<Atom> atoms_;
    DensityFamily family_ = DensityFamily::constant;
    double param_ = 1.0;
    std::optional<RegionSpec> restriction_;
};

/// Closed family of holomorphic probes used by bound checks, duality checks
/// and the diagnostics gallery.
class TestFunction {
public:
    /// [rho(a)^(n+1) / rho(z, a)^(2(n+1))]^(1/p), the normalized-kernel
    /// power with unit L^p norm shape.
    static TestFunction kernel_power(CPoint a, double p);
    /// (z_n + i)^(-alpha).
    static TestFunction resolvent_power(std::size_t dim, double alpha);
    /// K(z, z0)/sqrt(K(z0, z0)).
    static TestFunction normalized_kernel(CPoint z0);
    static TestFunction zero(std::size_t dim);

    cplx eval(const CPoint& z) const;

    /// Closed-form L^q norm; +infinity when the integral diverges.
    double lp_norm(double q) const;

    std::size_t dim() const { return dim_; }

    enum class Kind { kernel_power, resolvent_power, normalized_kernel, zero };
    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    const CPoint& anchor() const { return anchor_; }

private:
    Kind kind_ = Kind::zero;
    std::size_t dim_ = 1;
    CPoint anchor_;
    double param_ = 0.0;
};

/// Berezin transform mu~(z) = int |k_z|^2 dmu. Exact finite sum for atomic
/// measures; for densities the integral is pushed through the automorphism
/// normalizing z, under which |k_z|^2 dV pulls back to the uniform measure
/// of the unit ball, so the estimator is a plain ball average with
/// z-independent variance (and exactly 1 for unrestricted Lebesgue).
IntegrationResult berezin(const MeasureSpec& mu, const CPoint& z, std::size_t count,
                          std::uint64_t seed, unsigned workers = 0);

/// Averaging function mu^_r(z) = mu(D(z, r)) / |D(z, r)|, with |D| in
/// closed form. Atomic: exact membership sum. Unrestricted Lebesgue or
/// constant density: exact ratio. Otherwise mu(D) is estimated by weighted
/// Moebius-transport sampling of the ball.
IntegrationResult averaging(const MeasureSpec& mu, const CPoint& z, double r,
                            std::size_t count, std::uint64_t seed);

/// Admissibility integral int |w_n + i|^(-alpha) dmu(w) deciding membership
/// in the symbol class. Exact for atomic measures; shell-resolved Monte
/// Carlo with a divergence flag for densities.
IntegrationResult admissibility_integral(const MeasureSpec& mu, double alpha,
                                         std::size_t count, std::uint64_t seed,
                                         unsigned workers = 0);

/// Pointwise growth bound for Bergman-space members:
/// |f(z)| <= (4^n n!/pi^n)^(1/p) ||f||_p rho(z)^(-(n+1)/p), with a 1e-9
/// multiplicative slack absorbing rounding. Throws std::domain_error when
/// the closed-form norm is not finite.
bool growth_bound_check(const TestFunction& f, double p, const CPoint& z);

struct SupScan {
    double sup = 0.0;
    bool unbounded_trend = false;
};

/// Empirical sup of |z_n + i|^alpha |f(z)| over probes log-spaced toward
/// both boundary regimes. A finite report is evidence, not a proof; a
/// growing trend along |z_n + i| is flagged.
SupScan weighted_sup_scan(const TestFunction& f, double alpha, std::size_t probes,
                          std::uint64_t seed);

}  // namespace siegel

#endif
