#include "siegel/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "siegel/gamma.hpp"
#include "siegel/geometry.hpp"
#include "siegel/metric.hpp"
#include "siegel/rng.hpp"
#include "siegel/sampling.hpp"

namespace siegel {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr std::size_t kBlock = 16384;
constexpr double kPoleRadius = 1e-12;

struct BlockSums {
    double sum_re = 0.0;
    double sum_im = 0.0;
    double sum_abs2 = 0.0;
    std::size_t rejected = 0;
};

// The Cayley Jacobian 4/|1+xi_n|^(2(n+1)) blows up at the ball point that
// maps to infinity, and integrands on the domain routinely keep their mass
// there (the kernel bounds only decay like min-height powers). Half the
// proposals are therefore pushed toward that point by Moebius maps with
// strengths 1 - 2^-j on a geometric ladder: any single transport has
// bounded density, but the ladder's envelope grows like |1+xi_n|^-(n+1)
// at the pole, which keeps the importance weights of the slowly-decaying
// integrands from developing heavy tails.
constexpr int kPoleLadder = 20;

struct LadderTables {
    double g[kPoleLadder + 1];       // transport strengths, index 1..J
    double one_minus_g2[kPoleLadder + 1];
    double gs[kPoleLadder + 1];      // sqrt(1 - g^2)
    LadderTables() {
        g[0] = one_minus_g2[0] = gs[0] = 0.0;
        for (int j = 1; j <= kPoleLadder; ++j) {
            const double d = std::exp2(-j);
            g[j] = 1.0 - d;
            one_minus_g2[j] = d * (2.0 - d);
            gs[j] = std::sqrt(one_minus_g2[j]);
        }
    }
};
const LadderTables kLadder;

inline double int_pow(double x, std::size_t e) {
    double acc = 1.0;
    while (e > 0) {
        if (e & 1) acc *= x;
        x *= x;
        e >>= 1;
    }
    return acc;
}

/// Mixture density relative to the uniform ball measure.
inline double ladder_density(cplx xi_n, std::size_t np1) {
    double sum = 0.0;
    for (int j = 1; j <= kPoleLadder; ++j) {
        const double gj = kLadder.g[j];
        sum += int_pow(kLadder.one_minus_g2[j] /
                           std::norm(cplx(1.0 + gj * xi_n.real(), gj * xi_n.imag())),
                       np1);
    }
    return 0.5 + 0.5 * sum / kPoleLadder;
}

void run_block(const Integrand& f, std::size_t dim, std::size_t block_index,
               std::size_t block_count, std::uint64_t seed, bool unit_weight,
               BlockSums& out) {
    CounterRng rng(seed, block_index);
    BallPoint xi = BallPoint::origin(dim);
    CPoint w;
    w.zprime_mut().resize(dim - 1);
    const std::size_t np1 = dim + 1;
    for (std::size_t i = 0; i < block_count; ++i) {
        int rung = 0;
        if (!unit_weight) {
            const double u = rng.next_double();
            if (u >= 0.5)
                rung = 1 + std::min<int>(kPoleLadder - 1,
                                         static_cast<int>((u - 0.5) * 2.0 * kPoleLadder));
        }
        fill_uniform_unit_ball(rng, xi.coords_mut());
        double q_rel = 1.0;
        if (!unit_weight) {
            if (rung > 0) {
                // xi <- phi_a(xi), a = (0', -g): piles proposals where the
                // Jacobian does.
                const double g = kLadder.g[rung];
                std::vector<cplx>& c = xi.coords_mut();
                const cplx denom = 1.0 + g * c[dim - 1];
                for (std::size_t k = 0; k + 1 < dim; ++k)
                    c[k] = -kLadder.gs[rung] * c[k] / denom;
                c[dim - 1] = (-g - c[dim - 1]) / denom;
            }
            q_rel = ladder_density(xi.last(), np1);
        }
        const double denom2 = std::norm(1.0 + xi.last());
        if (denom2 < kPoleRadius * kPoleRadius) {
            ++out.rejected;
            continue;
        }
        cayley_into(xi, w);
        const double jac = unit_weight ? 1.0 : 4.0 / (int_pow(denom2, np1) * q_rel);
        const cplx val = f(w);
        const double gre = jac * val.real();
        const double gim = jac * val.imag();
        if (!std::isfinite(gre) || !std::isfinite(gim)) {
            ++out.rejected;
            continue;
        }
        out.sum_re += gre;
        out.sum_im += gim;
        out.sum_abs2 += gre * gre + gim * gim;
    }
}

IntegrationResult run(const Integrand& f, std::size_t dim, std::size_t count,
                      std::uint64_t seed, unsigned workers, Strategy strategy,
                      bool unit_weight = false) {
    if (count < 1) throw std::invalid_argument("integrate: count must be >= 1");
    if (dim < 1) throw std::invalid_argument("integrate: dim must be >= 1");
    if (workers == 0) workers = default_workers();

    const std::size_t nblocks = (count + kBlock - 1) / kBlock;
    std::vector<BlockSums> blocks(nblocks);
    auto work = [&](unsigned t) {
        for (std::size_t b = t; b < nblocks; b += workers) {
            const std::size_t n = std::min(kBlock, count - b * kBlock);
            run_block(f, dim, b, n, seed, unit_weight, blocks[b]);
        }
    };
    if (workers <= 1 || nblocks <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction in block order, independent of worker count.
    double sum_re = 0.0, sum_im = 0.0, sum_abs2 = 0.0;
    std::size_t rejected = 0;
    for (const BlockSums& b : blocks) {
        sum_re += b.sum_re;
        sum_im += b.sum_im;
        sum_abs2 += b.sum_abs2;
        rejected += b.rejected;
    }

    const std::size_t budget = 10 + (10 * count) / 1000000;
    if (rejected > budget)
        throw std::runtime_error("integrate: " + std::to_string(rejected) +
                                 " non-finite/pole samples exceed the rejection budget of " +
                                 std::to_string(budget));

    const double n = static_cast<double>(count);
    const double vol = unit_weight ? 1.0
                                   : std::pow(kPi, static_cast<double>(dim)) /
                                         factorial(static_cast<unsigned>(dim));
    IntegrationResult res;
    res.value = vol * cplx(sum_re / n, sum_im / n);
    const double mean2 = (sum_re * sum_re + sum_im * sum_im) / (n * n);
    const double var = count > 1 ? std::max(0.0, (sum_abs2 / n - mean2)) * n / (n - 1.0) : 0.0;
    res.std_error = vol * std::sqrt(var / n);
    res.samples = static_cast<std::int64_t>(count);
    res.strategy = strategy;

    return res;
}

}  // namespace

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::mc_ball_pullback: return "mc_ball_pullback";
        case Strategy::mc_region: return "mc_region";
        case Strategy::stratified_shell: return "stratified_shell";
    }
    return "unknown";
}

unsigned default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("SIEGEL_BERGMAN_THREADS")) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && cap >= 1) hw = std::min<unsigned long>(hw, cap);
    }
    return std::min(hw, 16u);
}

IntegrationResult integrate_siegel(const Integrand& f, std::size_t dim, std::size_t count,
                                   std::uint64_t seed, unsigned workers) {
    return run(f, dim, count, seed, workers, Strategy::mc_ball_pullback);
}

IntegrationResult integrate_region(const Integrand& f, const RegionSpec& region,
                                   std::size_t dim, std::size_t count, std::uint64_t seed,
                                   unsigned workers) {
    region.validate();
    if (region.unrestricted())
        return run(f, dim, count, seed, workers, Strategy::mc_region);
    Integrand restricted = [&f, region](const CPoint& w) -> cplx {
        if (!region_contains(region, w)) return cplx(0.0, 0.0);
        return f(w);
    };
    return run(restricted, dim, count, seed, workers, Strategy::mc_region);
}

IntegrationResult kernel_weighted_average(const Integrand& f, std::size_t dim,
                                          std::size_t count, std::uint64_t seed,
                                          unsigned workers) {
    return run(f, dim, count, seed, workers, Strategy::mc_ball_pullback,
               /*unit_weight=*/true);
}

bool shells_indicate_divergence(const ShellProfile& profile) {
    const auto flag_direction = [](const std::vector<ShellContribution>& s) {
        const std::size_t k = s.size();
        if (k < 3) return false;
        double peak = 0.0;
        for (const ShellContribution& c : s) peak = std::max(peak, c.magnitude);
        const double a = s[k - 3].magnitude, b = s[k - 2].magnitude, c = s[k - 1].magnitude;
        // Non-decaying material mass in the outermost shells: convergent
        // tails thin out geometrically, divergent ones do not.
        if (c < 0.01 * peak || c < 3.0 * s[k - 1].std_error) return false;
        return c >= 0.85 * b && b >= 0.85 * a;
    };
    return flag_direction(profile.toward_zero) || flag_direction(profile.toward_infinity);
}

IntegrationResult integrate_with_shells(const Integrand& f, const RegionSpec& region,
                                        std::size_t dim, std::size_t count,
                                        std::uint64_t seed, int shell_depth,
                                        ShellProfile& profile, unsigned workers) {
    region.validate();
    const int depth = std::max(1, shell_depth);
    const bool restricted = !region.unrestricted();
    Integrand boxed = [&f, &region, restricted](const CPoint& w) -> cplx {
        if (restricted && !region_contains(region, w)) return cplx(0.0, 0.0);
        return f(w);
    };

    // The value comes from the plain pullback estimator, which integrates
    // every shell without truncation. The shell audit below exists because
    // that estimator cannot witness divergent tails: the offending shells
    // carry large weights on rarely-hit sets.
    IntegrationResult res = run(boxed, dim, count, seed, workers, Strategy::stratified_shell);

    // Shell audit: strata k = -(depth+1) .. depth cover
    // rho in [2^-(depth+1), 2^(depth+1)); each stratum is rescaled onto the
    // reference band {1 <= rho < 2} by the dilation with Jacobian 2^(k(n+1)).
    const int k_lo = -(depth + 1);
    const int k_hi = depth;
    const std::size_t n_strata = static_cast<std::size_t>(k_hi - k_lo + 1);
    const std::size_t per = std::max<std::size_t>(512, count / (4 * n_strata));

    std::vector<ShellContribution> by_stratum(n_strata);
    const double np1 = static_cast<double>(dim) + 1.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double t = std::exp2(0.5 * static_cast<double>(k));
        const double scale = std::exp2(static_cast<double>(k) * np1);
        Integrand g = [&boxed, t, scale](const CPoint& u) -> cplx {
            const double r = rho(u);
            if (r < 1.0 || r >= 2.0) return cplx(0.0, 0.0);
            return scale * boxed(dilate(t, u));
        };
        const std::uint64_t sub_seed =
            CounterRng::mix(seed ^ (0x5E11ULL + 131ULL * static_cast<std::uint64_t>(k - k_lo)));
        const IntegrationResult part =
            run(g, dim, per, sub_seed, workers, Strategy::stratified_shell);
        ShellContribution& cell = by_stratum[static_cast<std::size_t>(k - k_lo)];
        cell.rho_lo = std::exp2(static_cast<double>(k));
        cell.rho_hi = std::exp2(static_cast<double>(k + 1));
        cell.value = part.value.real();
        cell.magnitude = std::abs(part.value);
        cell.std_error = part.std_error;
    }

    profile.toward_zero.clear();
    profile.toward_infinity.clear();
    for (int j = 0; j <= depth; ++j)
        profile.toward_zero.push_back(by_stratum[static_cast<std::size_t>(-(j + 1) - k_lo)]);
    for (int j = 0; j <= depth; ++j)
        profile.toward_infinity.push_back(by_stratum[static_cast<std::size_t>(j - k_lo)]);

    // Informational geometric closure of the resolved range.
    auto tail_estimate = [](const std::vector<ShellContribution>& s) {
        const std::size_t k = s.size();
        if (k < 3) return 0.0;
        const double last = s[k - 1].magnitude;
        const double prev = s[k - 2].magnitude;
        if (!(prev > 0.0) || !(last > 0.0)) return 0.0;
        const double q = std::min(last / prev, 0.75);
        return (s[k - 1].value / last) * last * q / (1.0 - q);
    };
    res.divergent = shells_indicate_divergence(profile);
    profile.tail_zero = res.divergent ? 0.0 : tail_estimate(profile.toward_zero);
    profile.tail_infinity = res.divergent ? 0.0 : tail_estimate(profile.toward_infinity);
    return res;
}

}  // namespace siegel
