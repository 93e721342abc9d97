#include "siegel/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "siegel/geometry.hpp"
#include "siegel/kernel.hpp"
#include "siegel/metric.hpp"
#include "siegel/rng.hpp"

namespace siegel {

IntegrationResult toeplitz_apply(const MeasureSpec& mu, const TestFunction& f,
                                 const CPoint& z, std::size_t count, std::uint64_t seed,
                                 unsigned workers) {
    require_interior(z, "toeplitz_apply");
    if (z.dim() != mu.dim() || f.dim() != mu.dim())
        throw std::invalid_argument("toeplitz_apply: dimension mismatch");
    if (mu.is_atomic()) {
        cplx s(0.0, 0.0);
        for (const MeasureSpec::Atom& a : mu.atoms())
            s += a.weight * bergman_kernel(z, a.point) * f.eval(a.point);
        IntegrationResult res;
        res.value = s;
        res.samples = static_cast<std::int64_t>(mu.atoms().size());
        return res;
    }
    const CPoint zc = z;
    Integrand integrand = [&mu, &f, zc](const CPoint& w) -> cplx {
        const double d = mu.density_at(w);
        if (d == 0.0) return cplx(0.0, 0.0);
        return d * bergman_kernel(zc, w) * f.eval(w);
    };
    RegionSpec full;
    ShellProfile profile;
    return integrate_with_shells(integrand, full, mu.dim(), count, seed, 10, profile, workers);
}

DualityResult duality_check(const MeasureSpec& mu, const TestFunction& f,
                            const TestFunction& g, double p, std::size_t count,
                            std::uint64_t seed, unsigned workers) {
    if (!mu.is_atomic())
        throw std::invalid_argument("duality_check: measure must be atomic");
    if (!(p > 1.0)) throw std::invalid_argument("duality_check: p must be > 1");
    if (f.kind() != TestFunction::Kind::resolvent_power ||
        g.kind() != TestFunction::Kind::resolvent_power)
        throw std::invalid_argument("duality_check: resolvent-power test functions required");
    const double n = static_cast<double>(mu.dim());
    const double pprime = p / (p - 1.0);
    // f must lie in some admissible decay class above n + 1/p, g above
    // n + 1/p'; the classes nest downward since |z_n + i| >= 1.
    if (!(f.parameter() > n + 1.0 / p))
        throw std::invalid_argument("duality_check: f decay exponent must exceed n + 1/p");
    if (!(g.parameter() > n + 1.0 / pprime))
        throw std::invalid_argument("duality_check: g decay exponent must exceed n + 1/p'");

    DualityResult out;
    for (const MeasureSpec::Atom& a : mu.atoms())
        out.rhs += a.weight * f.eval(a.point) * std::conj(g.eval(a.point));

    const MeasureSpec& muc = mu;
    Integrand integrand = [&muc, &f, &g](const CPoint& z) -> cplx {
        cplx tmu(0.0, 0.0);
        for (const MeasureSpec::Atom& a : muc.atoms())
            tmu += a.weight * bergman_kernel(z, a.point) * f.eval(a.point);
        return tmu * std::conj(g.eval(z));
    };
    IntegrationResult lhs = integrate_siegel(integrand, mu.dim(), count, seed, workers);
    out.lhs = lhs.value;
    out.sigma = lhs.std_error;
    return out;
}

IntegrationResult carleson_integral(const MeasureSpec& mu, const CPoint& a,
                                    std::size_t count, std::uint64_t seed,
                                    unsigned workers) {
    require_interior(a, "carleson_integral");
    if (a.dim() != mu.dim())
        throw std::invalid_argument("carleson_integral: dimension mismatch");
    const double np1 = static_cast<double>(mu.dim()) + 1.0;
    const double ra = std::pow(rho(a), np1);
    if (mu.is_atomic()) {
        double s = 0.0;
        for (const MeasureSpec::Atom& at : mu.atoms())
            s += at.weight * ra / std::pow(std::norm(rho(at.point, a)), np1);
        IntegrationResult res;
        res.value = s;
        res.samples = static_cast<std::int64_t>(mu.atoms().size());
        return res;
    }
    const CPoint ac = a;
    Integrand integrand = [&mu, ac, ra, np1](const CPoint& w) -> cplx {
        const double d = mu.density_at(w);
        if (d == 0.0) return cplx(0.0, 0.0);
        return cplx(d * ra / std::pow(std::norm(rho(w, ac)), np1), 0.0);
    };
    return integrate_siegel(integrand, mu.dim(), count, seed, workers);
}

const char* verdict_name(BoundedVerdict v) {
    switch (v) {
        case BoundedVerdict::carleson_consistent: return "carleson_consistent";
        case BoundedVerdict::not_carleson: return "not_carleson";
        case BoundedVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

const char* verdict_name(VanishingVerdict v) {
    switch (v) {
        case VanishingVerdict::vanishing_consistent: return "vanishing_consistent";
        case VanishingVerdict::not_vanishing: return "not_vanishing";
        case VanishingVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

// ---------------------------------------------------------------------------
// diagnose
// ---------------------------------------------------------------------------

namespace {

struct SeriesClass {
    bool below_threshold = true;
    bool stable = true;
    bool bounded_evidence() const { return below_threshold && stable; }
};

SeriesClass classify_stage_series(const std::vector<double>& sups, double threshold,
                                  double ratio) {
    SeriesClass c;
    for (double s : sups)
        if (!(s < threshold)) c.below_threshold = false;
    if (sups.size() >= 2) {
        const double last = sups.back();
        const double prev = sups[sups.size() - 2];
        if (!(last <= prev * ratio + 1e-12)) c.stable = false;
    }
    return c;
}

/// Non-increasing toward the boundary (within slack) and outermost mean
/// below the vanishing fraction of the global max.
bool decays(const std::vector<double>& means, double global_max, double fraction) {
    const std::size_t k = means.size();
    if (k < 3 || !(global_max > 0.0)) return false;
    const double slack = 1e-12 + 0.02 * global_max;
    if (!(means[k - 1] <= fraction * global_max)) return false;
    return means[k - 1] <= means[k - 2] + slack && means[k - 2] <= means[k - 3] + slack;
}

double shell_lo(char family, int k) {
    return family == 'r' ? std::pow(2.0, -k) : std::pow(2.0, k);
}

}  // namespace

DiagnosticsReport diagnose(const MeasureSpec& mu, const DiagnoseConfig& config_in) {
    DiagnoseConfig config = config_in;
    if (!(config.r > 0.0)) throw std::invalid_argument("diagnose: r must be > 0");
    const std::size_t n = mu.dim();
    if (config.stage_scales.empty()) {
        // The averaging sup of a measure concentrated at unit height keeps
        // growing until truncations reach heights ~ e^(-2r); the final
        // schedule pair must sit past that edge or transient growth gets
        // mistaken for boundary growth.
        const double edge = std::ceil(2.0 * config.r / std::log(2.0)) - 1.0;
        const double s0 = std::max(1.0, edge);
        if (n == 1)
            config.stage_scales = {s0, s0 + 1.0, s0 + 2.0};
        else
            config.stage_scales = {s0 + 1.0, s0 + 2.0};
    }
    if (config.berezin_count == 0)
        config.berezin_count = std::max<std::size_t>(2000, config.samples / 10);
    if (config.averaging_count == 0)
        config.averaging_count = std::max<std::size_t>(500, config.samples / 100);

    DiagnosticsReport rep;
    rep.config = config;

    // --- probe grid over dyadic shells toward both boundary regimes -------
    CounterRng grid_rng(config.seed, 0x981Du);
    std::vector<ProbeRow> probes;
    auto make_probe = [&](char family, int k, std::size_t j) -> CPoint {
        const double u = grid_rng.next_double();
        if (family == 'r') {
            const double rho_v = std::pow(2.0, -k) * (1.0 + u * 0.999);
            double x = 0.0;
            double zp2 = 0.0;
            std::vector<cplx> zp(n - 1, cplx(0.0, 0.0));
            if (j == 1) x = 0.9 + 0.6 * grid_rng.next_double();
            if (j == 2) x = -(0.9 + 0.6 * grid_rng.next_double());
            if (j >= 3 && n > 1) {
                const double m = 0.3 + 0.3 * grid_rng.next_double();
                zp[0] = cplx(m, 0.0);
                zp2 = m * m;
            } else if (j >= 3) {
                x = 0.2 * (2.0 * grid_rng.next_double() - 1.0);
            }
            return CPoint(std::move(zp), cplx(x, rho_v + zp2));
        }
        const double R = std::pow(2.0, k) * (1.0 + u * 0.999);
        std::vector<cplx> zp(n - 1, cplx(0.0, 0.0));
        if (j % 2 == 0) {
            // far along Re z_n at moderate height
            const double rho_v = 0.7 + 0.8 * grid_rng.next_double();
            const double sign = (j % 4 == 0) ? 1.0 : -1.0;
            return CPoint(std::move(zp), cplx(sign * R, rho_v));
        }
        // high above the boundary: rho comparable to |z|
        return CPoint(std::move(zp), cplx(0.0, R));
    };

    for (char family : {'r', 'z'}) {
        for (int k = 0; k <= config.shell_depth; ++k) {
            for (std::size_t j = 0; j < config.probes_per_shell; ++j) {
                ProbeRow row;
                row.family = family;
                row.shell = k;
                row.point = make_probe(family, k, j);
                probes.push_back(std::move(row));
            }
        }
    }

    // --- evaluate Berezin / averaging (and testing integral if atomic) ----
    const double np1 = static_cast<double>(n) + 1.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        ProbeRow& row = probes[i];
        const std::uint64_t probe_seed =
            CounterRng::mix(config.seed ^ (0xD1A6ull + 977ull * i));
        row.berezin_value =
            berezin(mu, row.point, config.berezin_count, probe_seed, config.workers)
                .real_value();
        row.averaging_value =
            averaging(mu, row.point, config.r, config.averaging_count, probe_seed ^ 0xA7ull)
                .real_value();
        if (mu.is_atomic()) {
            double s = 0.0;
            const double ra = std::pow(rho(row.point), np1);
            for (const MeasureSpec::Atom& at : mu.atoms())
                s += at.weight * ra / std::pow(std::norm(rho(at.point, row.point)), np1);
            row.condition_b = s;
        }
    }

    // --- shell aggregation -------------------------------------------------
    for (char family : {'r', 'z'}) {
        for (int k = 0; k <= config.shell_depth; ++k) {
            ShellRow row;
            row.family = family;
            row.shell = k;
            row.lo = shell_lo(family, k);
            row.hi = 2.0 * row.lo;
            for (const ProbeRow& p : probes) {
                if (p.family != family || p.shell != k) continue;
                row.berezin_mean += p.berezin_value;
                row.averaging_mean += p.averaging_value;
                row.berezin_max = std::max(row.berezin_max, p.berezin_value);
                row.averaging_max = std::max(row.averaging_max, p.averaging_value);
                ++row.count;
            }
            if (row.count > 0) {
                row.berezin_mean /= static_cast<double>(row.count);
                row.averaging_mean /= static_cast<double>(row.count);
            }
            rep.shell_trend.push_back(row);
        }
    }

    // --- global sup witnesses ----------------------------------------------
    for (const ProbeRow& p : probes) {
        if (p.berezin_value > rep.berezin_sup.value) {
            rep.berezin_sup.value = p.berezin_value;
            rep.berezin_sup.argmax = p.point;
        }
        if (p.averaging_value > rep.averaging_sup.value) {
            rep.averaging_sup.value = p.averaging_value;
            rep.averaging_sup.argmax = p.point;
        }
    }

    // --- truncation stages -------------------------------------------------
    // One lattice is built on the largest truncation; each stage reads the
    // sups over probes and centers lying inside its own region, so the
    // three stage series are sups over nested sets and growth across the
    // schedule is structural, not placement noise.
    auto stage_region = [](double s) {
        RegionSpec region;
        region.rho_min = std::pow(2.0, -s);
        region.rho_max = std::pow(2.0, s);
        region.max_abs = std::pow(2.0, s);
        return region;
    };
    const double s_top = config.stage_scales.back();
    LatticeConfig lc;
    lc.stream_size = config.lattice_stream;
    lc.covering_probes = std::max<std::size_t>(1000, config.lattice_stream / 4);
    lc.overlap_probes = std::max<std::size_t>(500, config.lattice_stream / 10);
    const std::uint64_t lattice_seed = CounterRng::mix(config.seed ^ 0x1A77ull);
    // Above one complex dimension the hyperbolic bulk of a full-width
    // truncation is unaffordable; the lattice keeps the full height range
    // (where boundary growth lives) but caps the Euclidean width.
    RegionSpec lattice_region = stage_region(s_top);
    if (n > 1) lattice_region.max_abs = std::pow(2.0, std::min(s_top, 2.0));
    const Lattice lat = build_lattice(lattice_region, n, config.r, lattice_seed, lc);
    std::vector<double> center_avg(lat.centers.size(), 0.0);
    for (std::size_t ci = 0; ci < lat.centers.size(); ++ci) {
        const std::uint64_t center_seed =
            CounterRng::mix(lattice_seed ^ (0xCE2ull + 101ull * ci));
        center_avg[ci] =
            averaging(mu, lat.centers[ci], config.r, config.averaging_count, center_seed)
                .real_value();
        if (center_avg[ci] > rep.lattice_sup.value) {
            rep.lattice_sup.value = center_avg[ci];
            rep.lattice_sup.argmax = lat.centers[ci];
        }
    }

    std::vector<double> s_berezin, s_averaging, s_lattice;
    for (std::size_t si = 0; si < config.stage_scales.size(); ++si) {
        StageRow stage;
        stage.scale = config.stage_scales[si];
        stage.region = stage_region(stage.scale);

        for (const ProbeRow& p : probes) {
            if (!region_contains(stage.region, p.point)) continue;
            stage.berezin_sup = std::max(stage.berezin_sup, p.berezin_value);
            stage.averaging_sup = std::max(stage.averaging_sup, p.averaging_value);
        }
        for (std::size_t ci = 0; ci < lat.centers.size(); ++ci) {
            if (!region_contains(stage.region, lat.centers[ci])) continue;
            ++stage.lattice_centers;
            stage.lattice_sup = std::max(stage.lattice_sup, center_avg[ci]);
        }
        s_berezin.push_back(stage.berezin_sup);
        s_averaging.push_back(stage.averaging_sup);
        s_lattice.push_back(stage.lattice_sup);
        rep.stages.push_back(std::move(stage));
    }

    // --- bounded verdict ----------------------------------------------------
    const SeriesClass c_ii = classify_stage_series(s_berezin, config.sup_threshold,
                                                   config.stability_ratio);
    const SeriesClass c_iii = classify_stage_series(s_averaging, config.sup_threshold,
                                                    config.stability_ratio);
    const SeriesClass c_d = classify_stage_series(s_lattice, config.sup_threshold,
                                                  config.stability_ratio);
    const int bounded_votes = static_cast<int>(c_ii.bounded_evidence()) +
                              static_cast<int>(c_iii.bounded_evidence()) +
                              static_cast<int>(c_d.bounded_evidence());
    if (bounded_votes == 3)
        rep.verdict_bounded = BoundedVerdict::carleson_consistent;
    else if (bounded_votes == 0)
        rep.verdict_bounded = BoundedVerdict::not_carleson;
    else
        rep.verdict_bounded = BoundedVerdict::inconclusive;

    // --- vanishing verdict from shell means of both statistics -------------
    std::vector<double> avg_r, avg_z, ber_r, ber_z;
    double avg_max = 0.0, ber_max = 0.0;
    for (const ShellRow& row : rep.shell_trend) {
        if (row.family == 'r') {
            avg_r.push_back(row.averaging_mean);
            ber_r.push_back(row.berezin_mean);
        } else {
            avg_z.push_back(row.averaging_mean);
            ber_z.push_back(row.berezin_mean);
        }
        avg_max = std::max(avg_max, row.averaging_mean);
        ber_max = std::max(ber_max, row.berezin_mean);
    }
    const bool avg_decays = decays(avg_r, avg_max, config.vanish_fraction) &&
                            decays(avg_z, avg_max, config.vanish_fraction);
    const bool ber_decays = decays(ber_r, ber_max, config.vanish_fraction) &&
                            decays(ber_z, ber_max, config.vanish_fraction);
    auto clearly_flat = [](const std::vector<double>& m, double mx) {
        return !m.empty() && mx > 0.0 && m.back() >= 0.5 * mx;
    };
    if (avg_decays && ber_decays)
        rep.verdict_vanishing = VanishingVerdict::vanishing_consistent;
    else if (clearly_flat(avg_r, avg_max) || clearly_flat(avg_z, avg_max) ||
             clearly_flat(ber_r, ber_max) || clearly_flat(ber_z, ber_max))
        rep.verdict_vanishing = VanishingVerdict::not_vanishing;
    else
        rep.verdict_vanishing = VanishingVerdict::inconclusive;

    // --- boundary slope of averaging means (rho -> 0 shells) ---------------
    {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int m = 0;
        for (const ShellRow& row : rep.shell_trend) {
            if (row.family != 'r' || row.shell < 4) continue;
            if (!(row.averaging_mean > 0.0)) continue;
            const double x = std::log(row.lo);
            const double y = std::log(row.averaging_mean);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        if (m >= 3) {
            const double denom = m * sxx - sx * sx;
            if (std::abs(denom) > 1e-12) {
                rep.rho_slope = (m * sxy - sx * sy) / denom;
                rep.rho_slope_valid = true;
            }
        }
    }

    rep.probes = std::move(probes);
    return rep;
}

}  // namespace siegel
