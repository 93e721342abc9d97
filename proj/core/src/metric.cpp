#include "siegel/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "siegel/gamma.hpp"
#include "siegel/geometry.hpp"
#include "siegel/rng.hpp"
#include "siegel/sampling.hpp"

namespace siegel {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

/// 1 - rho(z) rho(w)/|rho(z,w)|^2, the squared tanh of the distance,
/// clamped against rounding excursions below zero.
double tanh2_of_distance(const CPoint& z, const CPoint& w) {
    const double num = rho(z) * rho(w);
    const double den = std::norm(rho(z, w));
    double t2 = 1.0 - num / den;
    if (t2 < 0.0) t2 = 0.0;
    return t2;
}

}  // namespace

double atanh_clamped(double x) {
    if (x < 0.0) x = 0.0;
    const double cap = 1.0 - 1e-15;
    if (x > cap) x = cap;
    return 0.5 * std::log((1.0 + x) / (1.0 - x));
}

double bergman_distance(const CPoint& z, const CPoint& w) {
    require_interior(z, "bergman_distance");
    require_interior(w, "bergman_distance");
    return atanh_clamped(std::sqrt(tanh2_of_distance(z, w)));
}

double bergman_distance_ball_route(const CPoint& z, const CPoint& w) {
    const BallPoint xi = cayley_inverse(z);
    const BallPoint eta = cayley_inverse(w);
    return atanh_clamped(std::sqrt(moebius(xi, eta).abs2()));
}

bool ball_contains(const BergmanBall& ball, const CPoint& w) {
    require_interior(w, "ball_contains");
    const double t = std::tanh(ball.radius);
    return tanh2_of_distance(ball.center, w) < t * t;
}

double ball_volume(const CPoint& z, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("ball_volume: r must be > 0");
    require_interior(z, "ball_volume");
    const unsigned n = static_cast<unsigned>(z.dim());
    const double nn = static_cast<double>(n);
    const double t2 = std::tanh(r) * std::tanh(r);
    return 4.0 * std::pow(kPi, nn) / factorial(n) * std::pow(t2, nn) /
           std::pow(1.0 - t2, nn + 1.0) * std::pow(rho(z), nn + 1.0);
}

bool region_contains(const RegionSpec& region, const CPoint& z) {
    const double rz = rho(z);
    if (!(rz > 0.0)) return false;
    if (rz < region.rho_min || rz > region.rho_max) return false;
    if (region.max_abs < std::numeric_limits<double>::infinity() &&
        std::sqrt(z.abs2()) > region.max_abs)
        return false;
    if (region.ball.has_value() && !ball_contains(*region.ball, z)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Ball sampling.
//
// D(center, r) is carried to D(base, r) by the automorphism normalizing the
// center, whose Jacobian is constant, and D(base, r) is the Cayley image of
// the Euclidean ball B(0, R), R = tanh r. Uniform proposals in the unit
// ball are first pushed through the Moebius involution at (0', -R), which
// piles proposals up exactly where the Cayley Jacobian 4/|1+v_n|^(2(n+1))
// does; the residual weight is bounded by ((1+R)/(1-R))^(n+1) instead of
// the unbounded raw Jacobian.
// ---------------------------------------------------------------------------

BallSampler::BallSampler(const BergmanBall& ball)
    : ball_(ball), tanh_r_(std::tanh(ball.radius)),
      volume_(ball_volume(ball.center, ball.radius)), dim_(ball.center.dim()) {
    require_interior(ball.center, "BallSampler");
}

void BallSampler::propose(CounterRng& rng, BallPoint& u, CPoint& out, double& weight) const {
    const double R = tanh_r_;
    const std::size_t n = dim_;
    fill_uniform_unit_ball(rng, u.coords_mut());

    // Moebius push v = phi_a(u), a = (0', -R), written out for the special
    // center: P_a eta = (eta_n / -R) a e_n-component only.
    const cplx un = u.coords()[n - 1];
    const cplx denom = 1.0 + R * un;
    const double s = std::sqrt(1.0 - R * R);
    std::vector<cplx>& v = u.coords_mut();
    for (std::size_t k = 0; k + 1 < n; ++k) v[k] = -s * v[k] / denom;
    v[n - 1] = (-R - un) / denom;

    double v2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) v2 += std::norm(v[k]);
    if (v2 >= R * R) {
        weight = 0.0;
        return;
    }

    // weight density ratio on B(0, R):
    //   [4/|1+v_n|^2]^(n+1) target  /  [(1-R^2)/|1+R v_n|^2]^(n+1) proposal
    const cplx vn = v[n - 1];
    const double ratio = std::norm(1.0 + R * vn) / ((1.0 - R * R) * std::norm(1.0 + vn));
    double w = 4.0 * std::pow(kPi, static_cast<double>(n)) / factorial(static_cast<unsigned>(n));
    w *= std::pow(ratio, static_cast<double>(n) + 1.0);
    w *= std::pow(rho(ball_.center), static_cast<double>(n) + 1.0);
    weight = w;

    // Transport to the requested center.
    out = normalize_from_base(ball_.center, cayley(u));
}

double BallSampler::draw_weighted(CounterRng& rng, CPoint& out) const {
    BallPoint u = BallPoint::origin(dim_);
    double weight = 0.0;
    propose(rng, u, out, weight);
    return weight;
}

std::size_t BallSampler::draw_uniform(CounterRng& rng, CPoint& out) const {
    BallPoint u = BallPoint::origin(dim_);
    const double R = tanh_r_;
    std::size_t proposals = 0;
    for (;;) {
        ++proposals;
        double weight = 0.0;
        propose(rng, u, out, weight);
        if (weight == 0.0) continue;
        // Acceptance q = [|1+R v_n|^2 / ((1+R)^2 |1+v_n|^2)]^(n+1), the
        // proposal/target ratio normalized to peak at v_n = -R.
        const cplx vn = u.coords()[dim_ - 1];
        const double q = std::pow(
            std::norm(1.0 + R * vn) / ((1.0 + R) * (1.0 + R) * std::norm(1.0 + vn)),
            static_cast<double>(dim_) + 1.0);
        if (rng.next_double() < q) return proposals;
    }
}

std::vector<CPoint> sample_ball_uniform(const BergmanBall& ball, std::size_t count,
                                        std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_ball_uniform: count must be >= 1");
    BallSampler sampler(ball);
    CounterRng rng(seed, 0xBA11u);
    std::vector<CPoint> pts;
    pts.reserve(count);
    CPoint w;
    for (std::size_t i = 0; i < count; ++i) {
        sampler.draw_uniform(rng, w);
        pts.push_back(w);
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Region streams and lattices.
// ---------------------------------------------------------------------------

namespace {

double halton(std::uint64_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};

double shifted_halton(std::uint64_t index, unsigned coord, std::uint64_t seed) {
    const double shift =
        static_cast<double>(CounterRng::mix(seed + 0x51A3 * (coord + 1)) >> 11) * 0x1.0p-53;
    const double v = halton(index + 1, kPrimes[coord]) + shift;
    return v - std::floor(v);
}

CPoint box_stream_point(const RegionSpec& region, std::size_t dim, std::uint64_t seed,
                        std::size_t index) {
    // Box scan: z' re/im and Re z_n uniform over the |z| box, rho
    // log-uniform over its range so small heights are not starved.
    const double M = region.max_abs;
    const double rho_lo = std::max(region.rho_min, 1e-12);
    const double rho_hi = std::min(region.rho_max, M);
    const double zp_cap = std::sqrt(std::max(0.0, M - rho_lo));
    unsigned coord = 0;
    std::vector<cplx> zp(dim - 1);
    for (std::size_t k = 0; k + 1 < dim; ++k) {
        const double re = (2.0 * shifted_halton(index, coord++, seed) - 1.0) * zp_cap;
        const double im = (2.0 * shifted_halton(index, coord++, seed) - 1.0) * zp_cap;
        zp[k] = cplx(re, im);
    }
    const double x = (2.0 * shifted_halton(index, coord++, seed) - 1.0) * M;
    const double lr = std::log(rho_lo) +
                      shifted_halton(index, coord++, seed) * (std::log(rho_hi) - std::log(rho_lo));
    const double r = std::exp(lr);
    double zp2 = 0.0;
    for (const cplx& c : zp) zp2 += std::norm(c);
    return CPoint(std::move(zp), cplx(x, r + zp2));
}

}  // namespace

CPoint region_stream_point(const RegionSpec& region, std::size_t dim, std::uint64_t seed,
                           std::size_t index) {
    region.validate();
    if (region.ball.has_value()) {
        if (region.ball->center.dim() != dim)
            throw std::invalid_argument("region_stream_point: ball dimension mismatch");
        BallSampler sampler(*region.ball);
        CounterRng rng(seed, 0x57AE00ULL + index);
        CPoint w;
        for (int tries = 0; tries < 100000; ++tries) {
            sampler.draw_uniform(rng, w);
            if (region_contains(region, w)) return w;
        }
        throw std::runtime_error("region_stream_point: region appears empty");
    }
    if (!region.metrically_bounded())
        throw std::invalid_argument("region_stream_point: region must be bounded");
    for (std::size_t probe = 0; probe < 100000; ++probe) {
        CPoint z = box_stream_point(region, dim, seed, index * 131071ULL + probe);
        if (region_contains(region, z)) return z;
    }
    throw std::runtime_error("region_stream_point: region appears empty");
}

Lattice build_lattice(const RegionSpec& region, std::size_t dim, double r,
                      std::uint64_t seed, const LatticeConfig& config) {
    if (!(r > 0.0)) throw std::invalid_argument("build_lattice: r must be > 0");
    region.validate();
    if (dim < 1) throw std::invalid_argument("build_lattice: dim must be >= 1");

    Lattice lat;
    lat.r = r;
    lat.region = region;
    const double sep_t2 = std::tanh(r) * std::tanh(r);
    const double two_r_t2 = std::tanh(2.0 * r) * std::tanh(2.0 * r);

    // Greedy maximal separated subset: accept a candidate iff it is at
    // distance >= r from everything accepted so far. Maximality is what
    // buys covering: a rejected candidate is within r of some center.
    auto greedy_pass = [&](std::uint64_t stream_seed, std::size_t n_points) {
        for (std::size_t i = 0; i < n_points; ++i) {
            CPoint z = region_stream_point(region, dim, stream_seed, i);
            bool ok = true;
            for (const CPoint& a : lat.centers) {
                if (tanh2_of_distance(a, z) < sep_t2) {
                    ok = false;
                    break;
                }
            }
            if (ok) lat.centers.push_back(std::move(z));
        }
    };
    greedy_pass(seed, config.stream_size);
    // A repair pass over an independent stream: any point it still accepts
    // was a covering hole of the first pass.
    greedy_pass(CounterRng::mix(seed ^ 0x4E9Au), config.stream_size / 2);
    if (lat.centers.empty()) throw std::runtime_error("build_lattice: empty region");

    // Covering certificate on fresh probe streams. A failed probe sits at
    // distance >= r from every center, so it is itself a legal center; it
    // gets absorbed and the certificate reruns on the next fresh stream.
    // The reported statistics always come from a stream that played no part
    // in the construction.
    for (int round = 0; round < 5; ++round) {
        const std::uint64_t probe_seed =
            CounterRng::mix(seed ^ (0xC0FEu + 7919u * static_cast<std::uint64_t>(round)));
        double worst = 0.0;
        std::vector<CPoint> holes;
        for (std::size_t i = 0; i < config.covering_probes; ++i) {
            CPoint z = region_stream_point(region, dim, probe_seed, i);
            double best = std::numeric_limits<double>::infinity();
            for (const CPoint& a : lat.centers) {
                const double t2 = tanh2_of_distance(a, z);
                if (t2 < best) best = t2;
                if (best < sep_t2 * 0.25) break;  // comfortably covered
            }
            worst = std::max(worst, atanh_clamped(std::sqrt(best)));
            if (!(best < sep_t2)) {
                bool clear = true;  // also >= r from holes found this round
                for (const CPoint& h : holes)
                    if (tanh2_of_distance(h, z) < sep_t2) {
                        clear = false;
                        break;
                    }
                if (clear) holes.push_back(std::move(z));
            }
        }
        lat.covering_max_distance = worst;
        lat.covering_failures = holes.size();
        lat.covering_probes = config.covering_probes;
        if (holes.empty() || round == 4) break;
        for (CPoint& h : holes) lat.centers.push_back(std::move(h));
    }

    // Empirical overlap bound: how many dilated balls D(a_k, 2r) contain a
    // common point.
    const std::uint64_t mult_seed = CounterRng::mix(seed ^ 0x0E21u);
    int mult = 0;
    for (std::size_t i = 0; i < config.overlap_probes; ++i) {
        const CPoint z = region_stream_point(region, dim, mult_seed, i);
        int count = 0;
        for (const CPoint& a : lat.centers)
            if (tanh2_of_distance(a, z) < two_r_t2) ++count;
        mult = std::max(mult, count);
    }
    lat.multiplicity_estimate = mult;
    return lat;
}

bool quasi_invariance_check(const CPoint& z, const CPoint& u, const CPoint& v, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("quasi_invariance_check: r must be > 0");
    const double d = bergman_distance(u, v);
    if (d > r * (1.0 + 1e-12) + 1e-12)
        throw std::invalid_argument("quasi_invariance_check: beta(u,v) > r");
    const double t = std::tanh(r);
    const double lo = (1.0 - t) / (1.0 + t);
    const double hi = (1.0 + t) / (1.0 - t);
    const double ratio = std::abs(rho(z, u)) / std::abs(rho(z, v));
    return ratio >= lo / (1.0 + 1e-9) && ratio <= hi * (1.0 + 1e-9);
}

void compact_exhaustion_rho_bounds(double j, double& lo, double& hi) {
    if (!(j > 0.0)) throw std::invalid_argument("compact_exhaustion_rho_bounds: j must be > 0");
    const double c = 1.0 - std::tanh(j) * std::tanh(j);
    lo = c / 4.0;
    hi = 4.0 / c;
}

}  // namespace siegel
