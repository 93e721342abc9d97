#ifndef SIEGEL_REGION_HPP
#define SIEGEL_REGION_HPP

#include <limits>
#include <optional>
#include <stdexcept>

#include "siegel/point.hpp"

namespace siegel {

/// Metric ball D(center, radius) in the Bergman distance.
struct BergmanBall {
    CPoint center;
    double radius = 1.0;

    BergmanBall() = default;
    BergmanBall(CPoint c, double r) : center(std::move(c)), radius(r) {
        if (!(radius > 0.0)) throw std::invalid_argument("BergmanBall: radius must be > 0");
    }
};

/// Truncation of the domain used for restricted measures, lattice builds and
/// trend scans: {rho_min <= rho(z) <= rho_max, |z| <= max_abs}, optionally
/// intersected with a Bergman ball.
struct RegionSpec {
    double rho_min = 0.0;
    double rho_max = std::numeric_limits<double>::infinity();
    double max_abs = std::numeric_limits<double>::infinity();
    std::optional<BergmanBall> ball;

    void validate() const {
        if (!(rho_min >= 0.0)) throw std::invalid_argument("RegionSpec: rho_min must be >= 0");
        if (!(rho_min < rho_max)) throw std::invalid_argument("RegionSpec: rho_min < rho_max required");
        if (!(max_abs > 0.0)) throw std::invalid_argument("RegionSpec: max_abs must be > 0");
    }

    /// Whole domain (no restriction at all)?
    bool unrestricted() const {
        return rho_min == 0.0 && rho_max == std::numeric_limits<double>::infinity() &&
               max_abs == std::numeric_limits<double>::infinity() && !ball.has_value();
    }

    /// Bounded away from the boundary and from infinity in the Bergman
    /// metric (a Bergman ball always is).
    bool metrically_bounded() const {
        if (ball.has_value()) return true;
        return rho_min > 0.0 && rho_max < std::numeric_limits<double>::infinity() &&
               max_abs < std::numeric_limits<double>::infinity();
    }
};

/// Membership test (defined with the metric module, which owns distances).
bool region_contains(const RegionSpec& region, const CPoint& z);

}  // namespace siegel

#endif
