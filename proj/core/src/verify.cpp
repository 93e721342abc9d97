#include "siegel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "siegel/gamma.hpp"
#include "siegel/geometry.hpp"
#include "siegel/integrate.hpp"
#include "siegel/kernel.hpp"
#include "siegel/measure.hpp"
#include "siegel/metric.hpp"
#include "siegel/rng.hpp"
#include "siegel/sampling.hpp"

namespace siegel {

namespace {

double abs_floor(double expected) { return 1e-12 * std::max(1.0, std::abs(expected)); }

std::string label(unsigned n, const std::string& what) {
    std::ostringstream os;
    os << "n=" << n << " " << what;
    return os.str();
}

CPoint off_axis_point(unsigned n) {
    return CPoint(std::vector<cplx>(n - 1, cplx(0.0, 0.0)), cplx(0.0, 2.0));
}

/// Random interior point: Cayley image of a uniform ball point.
CPoint random_interior(CounterRng& rng, BallPoint& scratch) {
    fill_uniform_unit_ball(rng, scratch.coords_mut());
    return cayley(scratch);
}

double rel_err(cplx a, cplx b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

struct SuiteBuilder {
    const VerifyOptions& opt;
    std::vector<VerifyRow> rows;

    void mc_row(const std::string& name, double expected, const IntegrationResult& mc,
                bool enforce_sigma_budget) {
        VerifyRow row;
        row.identity = name;
        row.expected = expected;
        row.estimate = mc.value.real();
        row.sigma = mc.std_error;
        row.tolerance = abs_floor(expected);
        row.pass = std::abs(row.estimate - expected) <= 3.0 * row.sigma + row.tolerance;
        if (enforce_sigma_budget && !(row.sigma <= 0.01 * std::abs(expected)))
            row.pass = false;
        rows.push_back(std::move(row));
    }

    void err_row(const std::string& name, double max_err, double tolerance) {
        VerifyRow row;
        row.identity = name;
        row.expected = 0.0;
        row.estimate = max_err;
        row.sigma = 0.0;
        row.tolerance = tolerance;
        row.pass = max_err <= tolerance;
        rows.push_back(std::move(row));
    }

    void count_row(const std::string& name, std::size_t violations) {
        VerifyRow row;
        row.identity = name;
        row.expected = 0.0;
        row.estimate = static_cast<double>(violations);
        row.sigma = 0.0;
        row.tolerance = 0.0;
        row.pass = violations == 0;
        rows.push_back(std::move(row));
    }
};

void forelli_rudin_rows(SuiteBuilder& b, unsigned n) {
    const struct {
        double s, t;
    } params[] = {{4.0, 0.0}, {5.0, 1.0}, {6.0, 0.0}};
    const CPoint zs[] = {CPoint::base_point(n), off_axis_point(n)};
    for (const auto& p : params) {
        for (const CPoint& z : zs) {
            const double expected = forelli_rudin_integral(z, p.s, p.t);
            const CPoint zc = z;
            const double s = p.s, t = p.t;
            Integrand f = [zc, s, t](const CPoint& w) -> cplx {
                const double d2 = std::norm(rho(zc, w));
                const double num = t == 0.0 ? 1.0 : std::pow(rho(w), t);
                return cplx(num / std::pow(d2, s / 2.0), 0.0);
            };
            IntegrationResult mc = integrate_siegel(f, n, b.opt.samples, b.opt.seed + 11);
            std::ostringstream name;
            name << "forelli_rudin s=" << p.s << " t=" << p.t << " rho(z)=" << rho(z);
            b.mc_row(label(n, name.str()), expected, mc, /*sigma budget*/ true);
        }
    }
}

void volume_rows(SuiteBuilder& b, unsigned n) {
    const CPoint zs[] = {CPoint::base_point(n), off_axis_point(n)};
    const double r = 1.0;
    const double t2 = std::tanh(r) * std::tanh(r);
    for (const CPoint& z : zs) {
        const double expected = ball_volume(z, r);
        const CPoint zc = z;
        Integrand f = [zc, t2](const CPoint& w) -> cplx {
            const double frac = 1.0 - rho(zc) * rho(w) / std::norm(rho(zc, w));
            return cplx(frac < t2 ? 1.0 : 0.0, 0.0);
        };
        IntegrationResult mc = integrate_siegel(f, n, b.opt.samples, b.opt.seed + 23);
        std::ostringstream name;
        name << "ball_volume r=1 rho(z)=" << rho(z);
        b.mc_row(label(n, name.str()), expected, mc, false);
    }
}

void kernel_norm_rows(SuiteBuilder& b, unsigned n) {
    const CPoint z0 = CPoint::base_point(n);
    for (double p : {2.0, 3.0}) {
        const double expected = kernel_norm(z0, p);
        const double kc = kernel_constant(n);
        const double e = p * (static_cast<double>(n) + 1.0) / 2.0;
        const CPoint zc = z0;
        Integrand f = [zc, kc, e, p](const CPoint& w) -> cplx {
            const double d2 = std::norm(rho(w, zc));
            return cplx(std::pow(kc, p) / std::pow(d2, e), 0.0);
        };
        IntegrationResult mc = integrate_siegel(f, n, b.opt.samples, b.opt.seed + 31);
        // Delta method for the p-th root.
        const double integral = mc.value.real();
        VerifyRow row;
        std::ostringstream name;
        name << "kernel_norm p=" << p;
        row.identity = label(n, name.str());
        row.expected = expected;
        row.estimate = std::pow(integral, 1.0 / p);
        row.sigma = mc.std_error * std::pow(integral, 1.0 / p - 1.0) / p;
        row.tolerance = abs_floor(expected);
        row.pass = std::abs(row.estimate - expected) <= 3.0 * row.sigma + row.tolerance;
        b.rows.push_back(std::move(row));
    }
    // Exact route: ||K_z||_2 = sqrt(K(z, z)).
    const double lhs = kernel_norm(z0, 2.0);
    const double rhs = std::sqrt(kernel_diag(z0));
    b.err_row(label(n, "kernel_norm p=2 exact sqrt(K(z,z))"),
              std::abs(lhs - rhs) / rhs, 1e-12);
}

void identity_rows(SuiteBuilder& b, unsigned n) {
    CounterRng rng(b.opt.seed, 0x1DE0u + n);
    BallPoint s1 = BallPoint::origin(n), s2 = BallPoint::origin(n), s3 = BallPoint::origin(n);
    const CPoint base = CPoint::base_point(n);
    double e_cayley1 = 0.0, e_cayley3 = 0.0, e_cayley4 = 0.0;
    double e_jac = 0.0, e_modulus = 0.0, e_moebius = 0.0, e_transform = 0.0;
    for (std::size_t i = 0; i < b.opt.checks; ++i) {
        fill_uniform_unit_ball(rng, s1.coords_mut());
        fill_uniform_unit_ball(rng, s2.coords_mut());
        fill_uniform_unit_ball(rng, s3.coords_mut());
        const CPoint z = cayley(s1);
        const CPoint w = cayley(s2);

        // rho(Phi xi, Phi eta) = (1 - xi.conj(eta)) / ((1+xi_n)(1+conj(eta_n)))
        cplx ip(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            ip += s1.coords()[k] * std::conj(s2.coords()[k]);
        const cplx lhs1 = rho(z, w);
        const cplx rhs1 =
            (1.0 - ip) / ((1.0 + s1.last()) * std::conj(1.0 + s2.last()));
        e_cayley1 = std::max(e_cayley1, rel_err(lhs1, rhs1));

        // 1 - Phi^-1(z).conj(Phi^-1(w)) = rho(z,w) / (rho(z,i) rho(i,w))
        const BallPoint xi = cayley_inverse(z);
        const BallPoint eta = cayley_inverse(w);
        cplx ip2(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            ip2 += xi.coords()[k] * std::conj(eta.coords()[k]);
        const cplx rhs3 = rho(z, w) / (rho(z, base) * rho(base, w));
        e_cayley3 = std::max(e_cayley3, rel_err(1.0 - ip2, rhs3));

        // |Phi^-1(z)|^2 = 1 - rho(z)/|rho(z, i)|^2
        const double lhs4 = xi.abs2();
        const double rhs4 = 1.0 - rho(z) / std::norm(rho(z, base));
        e_cayley4 = std::max(e_cayley4, rel_err(lhs4, rhs4));

        // Jacobian inverse-composition and the modulus identity.
        e_jac = std::max(e_jac,
                         std::abs(cayley_jacobian(s1) * cayley_inverse_jacobian(z) - 1.0));
        e_modulus = std::max(
            e_modulus, std::abs(2.0 * std::abs(rho(z, base)) - std::abs(z.zn() + cplx(0.0, 1.0))));

        // Moebius pairing identity on random triples.
        const BallPoint pe = moebius(s1, s2);
        const BallPoint po = moebius(s1, s3);
        cplx ipeo(0.0, 0.0), ipeta_omega(0.0, 0.0), ipeta_xi(0.0, 0.0), ipxi_omega(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            ipeo += pe.coords()[k] * std::conj(po.coords()[k]);
            ipeta_omega += s2.coords()[k] * std::conj(s3.coords()[k]);
            ipeta_xi += s2.coords()[k] * std::conj(s1.coords()[k]);
            ipxi_omega += s1.coords()[k] * std::conj(s3.coords()[k]);
        }
        const cplx rhs_m = (1.0 - s1.abs2()) * (1.0 - ipeta_omega) /
                           ((1.0 - ipeta_xi) * (1.0 - ipxi_omega));
        e_moebius = std::max(e_moebius, rel_err(1.0 - ipeo, rhs_m));

        // Kernel transformation law through the normalizing automorphism.
        const cplx k_direct = bergman_kernel(z, w);
        const cplx k_moved = bergman_kernel(base, normalize_to_base(z, w)) *
                             std::pow(rho(z), -(static_cast<double>(n) + 1.0));
        e_transform = std::max(e_transform, rel_err(k_direct, k_moved));
    }
    b.err_row(label(n, "cayley identity rho-form"), e_cayley1, 1e-10);
    b.err_row(label(n, "cayley identity inverse-pairing"), e_cayley3, 1e-10);
    b.err_row(label(n, "cayley identity inverse-norm"), e_cayley4, 1e-10);
    b.err_row(label(n, "cayley jacobian composition"), e_jac, 1e-10);
    b.err_row(label(n, "modulus identity 2|rho(z,i)|=|z_n+i|"), e_modulus, 1e-12);
    b.err_row(label(n, "moebius pairing identity"), e_moebius, 1e-10);
    b.err_row(label(n, "kernel transformation law"), e_transform, 1e-10);
}

void metric_route_rows(SuiteBuilder& b, unsigned n) {
    CounterRng rng(b.opt.seed, 0x0E7Au + n);
    BallPoint s1 = BallPoint::origin(n), s2 = BallPoint::origin(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < b.opt.checks; ++i) {
        fill_uniform_unit_ball(rng, s1.coords_mut());
        fill_uniform_unit_ball(rng, s2.coords_mut());
        const CPoint z = cayley(s1);
        const CPoint w = cayley(s2);
        const double closed = bergman_distance(z, w);
        const double ball = bergman_distance_ball_route(z, w);
        worst = std::max(worst, std::abs(closed - ball) / std::max(closed, 1e-8));
    }
    b.err_row(label(n, "metric route equivalence"), worst, 1e-10);
}

void bound_rows(SuiteBuilder& b, unsigned n) {
    const double np1 = static_cast<double>(n) + 1.0;
    const double slack = 1.0 + 1e-9;
    const CPoint base = CPoint::base_point(n);

    // Kernel two-point bound.
    {
        CounterRng rng(b.opt.seed, 0xB07Du + n);
        BallPoint s1 = BallPoint::origin(n), s2 = BallPoint::origin(n);
        const double c = kernel_bound_constant(n);
        std::size_t violations = 0;
        for (std::size_t i = 0; i < b.opt.trials; ++i) {
            const CPoint z = random_interior(rng, s1);
            const CPoint w = random_interior(rng, s2);
            const double bound = c * std::pow(std::min(rho(z), rho(w)), -np1);
            if (std::abs(bergman_kernel(z, w)) > bound * slack) ++violations;
        }
        b.count_row(label(n, "kernel bound vs min-height"), violations);
    }

    // Quasi-invariance of |rho(z, .)| on metric balls.
    {
        CounterRng rng(b.opt.seed, 0x40A5u + n);
        BallPoint s1 = BallPoint::origin(n), s2 = BallPoint::origin(n);
        const double radii[] = {0.5, 1.0, 2.0};
        std::size_t violations = 0;
        CPoint v;
        for (std::size_t i = 0; i < b.opt.trials; ++i) {
            const CPoint z = random_interior(rng, s1);
            const CPoint u = random_interior(rng, s2);
            const double r = radii[i % 3];
            BallSampler sampler(BergmanBall(u, r));
            double weight = 0.0;
            do {
                weight = sampler.draw_weighted(rng, v);
            } while (weight == 0.0);
            if (!quasi_invariance_check(z, u, v, r)) ++violations;
        }
        b.count_row(label(n, "quasi-invariance on metric balls"), violations);
    }

    // Height range over the compact exhaustion pieces.
    {
        CounterRng rng(b.opt.seed, 0x9E57u + n);
        std::size_t violations = 0;
        CPoint w;
        const double js[] = {1.0, 2.0, 3.0};
        for (std::size_t i = 0; i < b.opt.trials; ++i) {
            const double j = js[i % 3];
            BallSampler sampler(BergmanBall(base, j));
            double weight = 0.0;
            do {
                weight = sampler.draw_weighted(rng, w);
            } while (weight == 0.0);
            double lo = 0.0, hi = 0.0;
            compact_exhaustion_rho_bounds(j, lo, hi);
            const double r = rho(w);
            if (r < lo / slack || r > hi * slack) ++violations;
        }
        b.count_row(label(n, "exhaustion height range"), violations);
    }

    // Pointwise growth bound for kernel functions.
    {
        CounterRng rng(b.opt.seed, 0x6047u + n);
        BallPoint s1 = BallPoint::origin(n), s2 = BallPoint::origin(n);
        std::size_t violations = 0;
        const double ps[] = {2.0, 3.0};
        for (std::size_t i = 0; i < b.opt.trials; ++i) {
            const CPoint w = random_interior(rng, s1);
            const CPoint z = random_interior(rng, s2);
            const double p = ps[i % 2];
            const double bound = growth_constant(n, p) * kernel_norm(w, p) *
                                 std::pow(rho(z), -np1 / p);
            if (std::abs(bergman_kernel(z, w)) > bound * slack) ++violations;
        }
        b.count_row(label(n, "growth bound for kernel functions"), violations);
    }

    // Mean-value bound with the explicit constant 4^n n!/(pi^n tanh^(2n) r).
    // The integral side is a quadrature: a first weighted-sampling pass with
    // a 4 sigma allowance, re-estimated at 16x the samples when it looks
    // violated (|K(., w)|^2 swings over orders of magnitude across a ball,
    // so small first-pass estimates are usually just unresolved mass).
    {
        CounterRng rng(b.opt.seed, 0x3EA1u + n);
        BallPoint s1 = BallPoint::origin(n), s2 = BallPoint::origin(n);
        std::size_t violations = 0;
        const double radii[] = {0.3, 0.6};
        const double kc = kernel_constant(n);
        CPoint u;
        const auto integral_guard = [&](const BallSampler& sampler, const CPoint& w,
                                        std::size_t m_samples) {
            double sum = 0.0, sum2 = 0.0;
            for (std::size_t m = 0; m < m_samples; ++m) {
                const double weight = sampler.draw_weighted(rng, u);
                double gval = 0.0;
                if (weight > 0.0)
                    gval = weight * kc * kc / std::pow(std::norm(rho(u, w)), np1);
                sum += gval;
                sum2 += gval * gval;
            }
            const double m = static_cast<double>(m_samples);
            const double mean = sum / m;
            const double var = std::max(0.0, sum2 / m - mean * mean) * m / (m - 1.0);
            return mean + 4.0 * std::sqrt(var / m);
        };
        for (std::size_t i = 0; i < b.opt.trials; ++i) {
            const CPoint w = random_interior(rng, s1);
            const CPoint z = random_interior(rng, s2);
            const double r = radii[i % 2];
            const double tr = std::tanh(r);
            const double cmv = std::pow(4.0, static_cast<double>(n)) * factorial(n) /
                               (std::pow(3.1415926535897932384626433832795,
                                         static_cast<double>(n)) *
                                std::pow(tr, 2.0 * static_cast<double>(n)));
            BallSampler sampler(BergmanBall(z, r));
            const double f_at_z = kc * kc / std::pow(std::norm(rho(z, w)), np1);  // |K(z,w)|^2
            const double scale = cmv * std::pow(rho(z), -np1);
            if (f_at_z <= scale * integral_guard(sampler, w, 256) * slack) continue;
            if (f_at_z > scale * integral_guard(sampler, w, 4096) * slack) ++violations;
        }
        b.count_row(label(n, "mean-value bound on metric balls"), violations);
    }
}

}  // namespace

std::vector<VerifyRow> run_verify_suite(const VerifyOptions& options) {
    SuiteBuilder b{options, {}};
    for (unsigned n : options.dims) {
        forelli_rudin_rows(b, n);
        volume_rows(b, n);
        kernel_norm_rows(b, n);
        identity_rows(b, n);
        metric_route_rows(b, n);
        bound_rows(b, n);
    }
    return std::move(b.rows);
}

bool verify_all_pass(const std::vector<VerifyRow>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

nlohmann::json verify_rows_to_json(const std::vector<VerifyRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const VerifyRow& r : rows) {
        arr.push_back(nlohmann::json{{"identity", r.identity},
                                     {"expected", r.expected},
                                     {"estimate", r.estimate},
                                     {"sigma", r.sigma},
                                     {"tolerance", r.tolerance},
                                     {"pass", r.pass}});
    }
    return arr;
}

}  // namespace siegel
