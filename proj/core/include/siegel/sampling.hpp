#ifndef SIEGEL_SAMPLING_HPP
#define SIEGEL_SAMPLING_HPP

#include <vector>

#include "siegel/point.hpp"
#include "siegel/rng.hpp"

namespace siegel {

/// Uniform point of the unit ball of C^n written into u (size n fixed by
/// caller): Gaussian direction scaled by U^(1/(2n)).
inline void fill_uniform_unit_ball(CounterRng& rng, std::vector<cplx>& u) {
    const std::size_t n = u.size();
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double a = rng.next_normal();
            const double b = rng.next_normal();
            u[k] = cplx(a, b);
            norm2 += a * a + b * b;
        }
    } while (norm2 == 0.0);
    const double radius =
        std::pow(rng.next_double_pos(), 1.0 / (2.0 * static_cast<double>(n)));
    const double scale = radius / std::sqrt(norm2);
    for (std::size_t k = 0; k < n; ++k) u[k] *= scale;
}

}  // namespace siegel

#endif
