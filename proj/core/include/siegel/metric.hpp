#ifndef SIEGEL_METRIC_HPP
#define SIEGEL_METRIC_HPP

#include <cstdint>
#include <vector>

#include "siegel/point.hpp"
#include "siegel/region.hpp"

namespace siegel {

/// Bergman distance in closed form:
///   beta(z, w) = atanh sqrt(1 - rho(z) rho(w) / |rho(z, w)|^2).
double bergman_distance(const CPoint& z, const CPoint& w);

/// Same distance through the ball model: atanh |phi_xi(eta)| with
/// xi, eta the Cayley preimages. Kept as an independent route for checks.
double bergman_distance_ball_route(const CPoint& z, const CPoint& w);

/// atanh computed as log((1+x)/(1-x))/2 with clamping to [0, 1 - 1e-15]
/// so rounding noise above 1 cannot produce infinities.
double atanh_clamped(double x);

bool ball_contains(const BergmanBall& ball, const CPoint& w);

/// Exact Lebesgue volume of D(z, r):
///   (4 pi^n / n!) tanh^(2n) r / (1 - tanh^2 r)^(n+1) rho(z)^(n+1).
double ball_volume(const CPoint& z, double r);

/// Lebesgue-uniform samples of D(center, r). Sampling happens in the ball
/// model around the origin: uniform proposals in the unit ball are pushed
/// through a Moebius map concentrating where the Cayley Jacobian does,
/// thinned by Jacobian-weighted rejection, then transported to the ball
/// center by the automorphism with constant Jacobian. Deterministic per
/// seed.
std::vector<CPoint> sample_ball_uniform(const BergmanBall& ball, std::size_t count,
                                        std::uint64_t seed);

/// One weighted sample of D(center, r): fills `out` and returns a weight
/// such that E[weight * f(out)] = int_{D} f dV for integrable f. Every draw
/// contributes (no rejection), which is what the averaging paths use.
class BallSampler {
public:
    BallSampler(const BergmanBall& ball);

    /// Weighted draw; returns the quadrature weight (dV mass carried).
    double draw_weighted(class CounterRng& rng, CPoint& out) const;

    /// Uniform-in-ball draw via rejection; returns number of proposals used.
    std::size_t draw_uniform(class CounterRng& rng, CPoint& out) const;

    double volume() const { return volume_; }

private:
    void propose(class CounterRng& rng, BallPoint& u, CPoint& out, double& weight) const;

    BergmanBall ball_;
    double tanh_r_;
    double volume_;
    std::size_t dim_;
};

/// r-lattice over a metrically bounded region: greedy maximal r-separated
/// subset of a deterministic sample stream, with empirical covering and
/// overlap statistics.
struct Lattice {
    std::vector<CPoint> centers;
    double r = 0.0;
    int multiplicity_estimate = 0;
    RegionSpec region;
    // Covering certificate over fresh probes: worst nearest-center distance
    // and how many probes ended up farther than r from every center.
    double covering_max_distance = 0.0;
    std::size_t covering_failures = 0;
    std::size_t covering_probes = 0;
};

struct LatticeConfig {
    std::size_t stream_size = 20000;    // candidate stream length
    std::size_t covering_probes = 5000; // fresh probes for the certificate
    std::size_t overlap_probes = 2000;  // probes for the multiplicity estimate
};

Lattice build_lattice(const RegionSpec& region, std::size_t dim, double r,
                      std::uint64_t seed, const LatticeConfig& config = {});

/// Deterministic stream of region points (Halton low-discrepancy scan of the
/// bounding box, log-spaced in rho; Bergman-ball regions use the transported
/// ball sampler). Index k of stream (region, seed) is reproducible.
CPoint region_stream_point(const RegionSpec& region, std::size_t dim, std::uint64_t seed,
                           std::size_t index);

/// Two-sided quasi-invariance bound for |rho(z,u)|/|rho(z,v)| when
/// beta(u, v) <= r (1e-9 multiplicative slack). Throws if the precondition
/// fails.
bool quasi_invariance_check(const CPoint& z, const CPoint& u, const CPoint& v, double r);

/// rho range certified on the closure of D(base, j):
/// (1 - tanh^2 j)/4 <= rho(w) <= 4/(1 - tanh^2 j).
void compact_exhaustion_rho_bounds(double j, double& lo, double& hi);

}  // namespace siegel

#endif
