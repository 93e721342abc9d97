#include "siegel/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "siegel/geometry.hpp"
#include "siegel/kernel.hpp"
#include "siegel/metric.hpp"
#include "siegel/rng.hpp"

namespace siegel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const cplx kImag(0.0, 1.0);
}  // namespace

// ---------------------------------------------------------------------------
// MeasureSpec
// ---------------------------------------------------------------------------

MeasureSpec MeasureSpec::atomic(std::size_t dim, std::vector<Atom> atoms) {
    MeasureSpec m;
    m.kind_ = Kind::atomic;
    m.dim_ = dim;
    for (const Atom& a : atoms) {
        if (a.point.dim() != dim)
            throw std::invalid_argument("MeasureSpec: atom dimension mismatch");
        if (!(a.weight > 0.0))
            throw std::invalid_argument("MeasureSpec: atom weights must be > 0");
        require_interior(a.point, "MeasureSpec::atomic");
    }
    m.atoms_ = std::move(atoms);
    return m;
}

MeasureSpec MeasureSpec::density(std::size_t dim, DensityFamily family, double param,
                                 std::optional<RegionSpec> restriction) {
    MeasureSpec m;
    m.kind_ = Kind::density;
    m.dim_ = dim;
    m.family_ = family;
    m.param_ = param;
    if (family == DensityFamily::constant && !(param > 0.0))
        throw std::invalid_argument("MeasureSpec: constant density scale must be > 0");
    if (restriction.has_value()) restriction->validate();
    m.restriction_ = std::move(restriction);
    return m;
}

MeasureSpec MeasureSpec::lebesgue(std::size_t dim, std::optional<RegionSpec> restriction) {
    MeasureSpec m;
    m.kind_ = Kind::lebesgue;
    m.dim_ = dim;
    if (restriction.has_value()) restriction->validate();
    m.restriction_ = std::move(restriction);
    return m;
}

const std::vector<MeasureSpec::Atom>& MeasureSpec::atoms() const {
    if (kind_ != Kind::atomic)
        throw std::logic_error("MeasureSpec::atoms: not an atomic measure");
    return atoms_;
}

double MeasureSpec::density_at(const CPoint& w) const {
    if (kind_ == Kind::atomic)
        throw std::logic_error("MeasureSpec::density_at: atomic measure");
    if (restriction_.has_value() && !region_contains(*restriction_, w)) return 0.0;
    if (kind_ == Kind::lebesgue) return 1.0;
    switch (family_) {
        case DensityFamily::constant: return param_;
        case DensityFamily::rho_power: {
            const double r = rho(w);
            return r > 0.0 ? std::pow(r, param_) : 0.0;
        }
    }
    return 0.0;
}

bool MeasureSpec::compactly_supported() const {
    if (kind_ == Kind::atomic) return true;
    return restriction_.has_value() && restriction_->metrically_bounded();
}

// ---------------------------------------------------------------------------
// TestFunction
// ---------------------------------------------------------------------------

TestFunction TestFunction::kernel_power(CPoint a, double p) {
    require_interior(a, "TestFunction::kernel_power");
    if (!(p > 0.0)) throw std::invalid_argument("TestFunction: p must be > 0");
    TestFunction f;
    f.kind_ = Kind::kernel_power;
    f.dim_ = a.dim();
    f.anchor_ = std::move(a);
    f.param_ = p;
    return f;
}

TestFunction TestFunction::resolvent_power(std::size_t dim, double alpha) {
    TestFunction f;
    f.kind_ = Kind::resolvent_power;
    f.dim_ = dim;
    f.param_ = alpha;
    return f;
}

TestFunction TestFunction::normalized_kernel(CPoint z0) {
    require_interior(z0, "TestFunction::normalized_kernel");
    TestFunction f;
    f.kind_ = Kind::normalized_kernel;
    f.dim_ = z0.dim();
    f.anchor_ = std::move(z0);
    return f;
}

TestFunction TestFunction::zero(std::size_t dim) {
    TestFunction f;
    f.kind_ = Kind::zero;
    f.dim_ = dim;
    return f;
}

cplx TestFunction::eval(const CPoint& z) const {
    if (z.dim() != dim_) throw std::invalid_argument("TestFunction::eval: dimension mismatch");
    switch (kind_) {
        case Kind::zero:
            return cplx(0.0, 0.0);
        case Kind::resolvent_power:
            return principal_pow(z.zn() + kImag, -param_);
        case Kind::normalized_kernel:
            // Holomorphic in the argument, with |.| equal to |k_{z0}|.
            return bergman_kernel(z, anchor_) / std::sqrt(kernel_diag(anchor_));
        case Kind::kernel_power: {
            const double np1 = static_cast<double>(dim_) + 1.0;
            const cplx r = rho(z, anchor_);
            return std::pow(rho(anchor_), np1 / param_) *
                   principal_pow(r, -2.0 * np1 / param_);
        }
    }
    return cplx(0.0, 0.0);
}

double TestFunction::lp_norm(double q) const {
    if (!(q > 0.0)) throw std::invalid_argument("TestFunction::lp_norm: q must be > 0");
    const unsigned n = static_cast<unsigned>(dim_);
    const double np1 = static_cast<double>(n) + 1.0;
    switch (kind_) {
        case Kind::zero:
            return 0.0;
        case Kind::resolvent_power: {
            // int |z_n+i|^(-aq) dV = 2^(-aq) C(n, aq, 0) by 2|rho(z, base)| = |z_n+i|.
            const double s = param_ * q;
            const double c = forelli_rudin_constant(n, s, 0.0);
            if (is_divergent(c)) return kInf;
            return std::pow(std::pow(2.0, -s) * c, 1.0 / q);
        }
        case Kind::normalized_kernel: {
            if (!(q > 1.0)) return kInf;
            return kernel_norm(anchor_, q) / std::sqrt(kernel_diag(anchor_));
        }
        case Kind::kernel_power: {
            const double s = 2.0 * q * np1 / param_;
            const double c = forelli_rudin_constant(n, s, 0.0);
            if (is_divergent(c)) return kInf;
            return std::pow(c * std::pow(rho(anchor_), q * np1 / param_ - (s - np1)), 1.0 / q);
        }
    }
    return kInf;
}

// ---------------------------------------------------------------------------
// Berezin transform
// ---------------------------------------------------------------------------

IntegrationResult berezin(const MeasureSpec& mu, const CPoint& z, std::size_t count,
                          std::uint64_t seed, unsigned workers) {
    require_interior(z, "berezin");
    if (z.dim() != mu.dim()) throw std::invalid_argument("berezin: dimension mismatch");
    if (mu.is_atomic()) {
        double s = 0.0;
        for (const MeasureSpec::Atom& a : mu.atoms())
            s += a.weight * normalized_kernel_abs2(z, a.point);
        IntegrationResult res;
        res.value = s;
        res.std_error = 0.0;
        res.samples = static_cast<std::int64_t>(mu.atoms().size());
        res.strategy = Strategy::mc_ball_pullback;
        return res;
    }
    // mu~(z) = int density(w) |k_z(w)|^2 dV(w); moving the integral through
    // the automorphism that normalizes z leaves int density(sigma^-1 u)
    // |k_base(u)|^2 dV(u), a kernel-weighted average.
    const CPoint zc = z;
    Integrand f = [&mu, zc](const CPoint& u) -> cplx {
        return cplx(mu.density_at(normalize_from_base(zc, u)), 0.0);
    };
    return kernel_weighted_average(f, mu.dim(), count, seed, workers);
}

// ---------------------------------------------------------------------------
// Averaging function
// ---------------------------------------------------------------------------

IntegrationResult averaging(const MeasureSpec& mu, const CPoint& z, double r,
                            std::size_t count, std::uint64_t seed) {
    if (!(r > 0.0)) throw std::invalid_argument("averaging: r must be > 0");
    require_interior(z, "averaging");
    if (z.dim() != mu.dim()) throw std::invalid_argument("averaging: dimension mismatch");
    const double vol = ball_volume(z, r);
    IntegrationResult res;
    res.strategy = Strategy::mc_region;

    if (mu.is_atomic()) {
        const double t = std::tanh(r);
        double mass = 0.0;
        for (const MeasureSpec::Atom& a : mu.atoms()) {
            const double num = rho(z) * rho(a.point);
            const double den = std::norm(rho(z, a.point));
            if (1.0 - num / den < t * t) mass += a.weight;
        }
        res.value = mass / vol;
        res.samples = static_cast<std::int64_t>(mu.atoms().size());
        return res;
    }

    // Unrestricted constant densities have mu(D) = c |D| in closed form.
    if (!mu.restriction().has_value() &&
        (mu.is_lebesgue() || mu.family() == MeasureSpec::DensityFamily::constant)) {
        res.value = mu.is_lebesgue() ? 1.0 : mu.family_param();
        res.samples = 1;
        return res;
    }

    if (count < 1) throw std::invalid_argument("averaging: count must be >= 1");
    // Self-normalized weighted transport: mu^ = sum(w d)/sum(w). The weight
    // noise cancels between numerator and denominator (exactly so for
    // constant densities); the O(1/N) ratio bias is far below the reported
    // sigma. Sigma by the delta method.
    BallSampler sampler(BergmanBall(z, r));
    CounterRng rng(seed, 0xAFu);
    CPoint w;
    double sum_w = 0.0, sum_wd = 0.0;
    std::vector<double> ws(count), ds(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double weight = sampler.draw_weighted(rng, w);
        const double d = weight > 0.0 ? mu.density_at(w) : 0.0;
        ws[i] = weight;
        ds[i] = d;
        sum_w += weight;
        sum_wd += weight * d;
    }
    const double n = static_cast<double>(count);
    if (!(sum_w > 0.0)) {
        res.value = 0.0;
        res.std_error = 0.0;
        res.samples = static_cast<std::int64_t>(count);
        return res;
    }
    const double ratio = sum_wd / sum_w;
    double var = 0.0;
    const double wbar = sum_w / n;
    for (std::size_t i = 0; i < count; ++i) {
        const double e = ws[i] * (ds[i] - ratio) / wbar;
        var += e * e;
    }
    var = count > 1 ? var / (n - 1.0) : 0.0;
    res.value = ratio;
    res.std_error = std::sqrt(var / n);
    res.samples = static_cast<std::int64_t>(count);
    return res;
}

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

IntegrationResult admissibility_integral(const MeasureSpec& mu, double alpha,
                                         std::size_t count, std::uint64_t seed,
                                         unsigned workers) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("admissibility_integral: alpha must be > 0");
    if (mu.is_atomic()) {
        double s = 0.0;
        for (const MeasureSpec::Atom& a : mu.atoms())
            s += a.weight * std::pow(std::abs(a.point.zn() + kImag), -alpha);
        IntegrationResult res;
        res.value = s;
        res.samples = static_cast<std::int64_t>(mu.atoms().size());
        res.strategy = Strategy::stratified_shell;
        return res;
    }
    Integrand f = [&mu, alpha](const CPoint& w) -> cplx {
        const double d = mu.density_at(w);
        if (d == 0.0) return cplx(0.0, 0.0);
        return cplx(d * std::pow(std::abs(w.zn() + kImag), -alpha), 0.0);
    };
    RegionSpec full;
    ShellProfile profile;
    return integrate_with_shells(f, full, mu.dim(), count, seed, 10, profile, workers);
}

// ---------------------------------------------------------------------------
// Growth bound
// ---------------------------------------------------------------------------

bool growth_bound_check(const TestFunction& f, double p, const CPoint& z) {
    require_interior(z, "growth_bound_check");
    if (z.dim() != f.dim())
        throw std::invalid_argument("growth_bound_check: dimension mismatch");
    const double norm = f.lp_norm(p);
    if (!std::isfinite(norm))
        throw std::domain_error("growth_bound_check: ||f||_p is not finite");
    const unsigned n = static_cast<unsigned>(z.dim());
    const double np1 = static_cast<double>(n) + 1.0;
    const double bound = growth_constant(n, p) * norm * std::pow(rho(z), -np1 / p);
    return std::abs(f.eval(z)) <= bound * (1.0 + 1e-9);
}

// ---------------------------------------------------------------------------
// Weighted sup scan
// ---------------------------------------------------------------------------

SupScan weighted_sup_scan(const TestFunction& f, double alpha, std::size_t probes,
                          std::uint64_t seed) {
    if (probes < 16) probes = 16;
    CounterRng rng(seed, 0x5CA0u);
    SupScan out;
    // Bucket maxima over log2 |z_n + i| to expose growth toward infinity.
    constexpr int kBuckets = 24;
    double bucket_max[kBuckets] = {0.0};
    const std::size_t n = f.dim();
    for (std::size_t i = 0; i < probes; ++i) {
        // rho and |x| log-spaced through both regimes, z' scaled with rho.
        const double rho_v = std::exp2(-10.0 + 20.0 * rng.next_double());
        const double xmag = std::exp2(-10.0 + 20.0 * rng.next_double());
        const double x = (rng.next_double() < 0.2) ? 0.0
                         : (rng.next_double() < 0.5 ? xmag : -xmag);
        std::vector<cplx> zp(n - 1, cplx(0.0, 0.0));
        double zp2 = 0.0;
        if (n > 1 && rng.next_double() < 0.5) {
            const double mag = std::sqrt(rho_v) * rng.next_double();
            const double ang = 6.283185307179586 * rng.next_double();
            zp[0] = cplx(mag * std::cos(ang), mag * std::sin(ang));
            zp2 = mag * mag;
        }
        CPoint z(std::move(zp), cplx(x, rho_v + zp2));
        const double weight = std::pow(std::abs(z.zn() + kImag), alpha);
        const double m = weight * std::abs(f.eval(z));
        out.sup = std::max(out.sup, m);
        int b = static_cast<int>(std::floor(std::log2(std::abs(z.zn() + kImag))));
        b = std::clamp(b, 0, kBuckets - 1);
        bucket_max[b] = std::max(bucket_max[b], m);
    }
    // Trend: strictly growing maxima across the top occupied buckets.
    std::vector<double> occupied;
    for (int b = 0; b < kBuckets; ++b)
        if (bucket_max[b] > 0.0) occupied.push_back(bucket_max[b]);
    if (occupied.size() >= 4) {
        const std::size_t k = occupied.size();
        const bool growing = occupied[k - 1] > 2.0 * occupied[k - 3] &&
                             occupied[k - 2] > occupied[k - 4] &&
                             occupied[k - 1] > 10.0 * occupied[k / 2];
        out.unbounded_trend = growing;
    }
    return out;
}

}  // namespace siegel
