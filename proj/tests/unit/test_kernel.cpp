#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "siegel/geometry.hpp"
#include "siegel/integrate.hpp"
#include "siegel/kernel.hpp"
#include "siegel/measure.hpp"
#include "siegel/rng.hpp"
#include "siegel/sampling.hpp"

using namespace siegel;

namespace {
constexpr double kPi = 3.14159265358979323846;

CPoint pt1(double re, double im) { return CPoint({}, cplx(re, im)); }
}  // namespace

TEST_CASE("kernel at reference points") {
    const CPoint base = CPoint::base_point(1);
    CHECK(bergman_kernel(base, base).real() == doctest::Approx(1.0 / (4.0 * kPi)));
    CHECK(bergman_kernel(base, base).imag() == doctest::Approx(0.0));
    // rho(z, w) = 3/2 between the base point and (0', 2i)
    CHECK(bergman_kernel(base, pt1(0.0, 2.0)).real() ==
          doctest::Approx(1.0 / (9.0 * kPi)));
    CHECK(kernel_diag(base) == doctest::Approx(1.0 / (4.0 * kPi)));
}

TEST_CASE("kernel conjugate symmetry and exterior rejection") {
    CounterRng rng(1, 0);
    BallPoint s = BallPoint::origin(2);
    for (int i = 0; i < 500; ++i) {
        fill_uniform_unit_ball(rng, s.coords_mut());
        const CPoint z = cayley(s);
        fill_uniform_unit_ball(rng, s.coords_mut());
        const CPoint w = cayley(s);
        const cplx a = bergman_kernel(z, w);
        const cplx b = std::conj(bergman_kernel(w, z));
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
    CHECK_THROWS_AS(bergman_kernel(pt1(0.0, -1.0), CPoint::base_point(1)),
                    std::domain_error);
}

TEST_CASE("normalized kernel values and algebraic square") {
    const CPoint base = CPoint::base_point(1);
    CHECK(normalized_kernel(base, base).real() ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(kPi))));
    CounterRng rng(2, 0);
    BallPoint s = BallPoint::origin(1);
    for (int i = 0; i < 500; ++i) {
        fill_uniform_unit_ball(rng, s.coords_mut());
        const CPoint z = cayley(s);
        fill_uniform_unit_ball(rng, s.coords_mut());
        const CPoint w = cayley(s);
        const double direct = std::norm(normalized_kernel(z, w));
        CHECK(normalized_kernel_abs2(z, w) == doctest::Approx(direct).epsilon(1e-11));
    }
}

TEST_CASE("forelli-rudin constants by gamma arithmetic") {
    CHECK(forelli_rudin_constant(1, 4.0, 0.0) == doctest::Approx(4.0 * kPi));
    CHECK(forelli_rudin_constant(2, 6.0, 0.0) == doctest::Approx(2.0 * kPi * kPi));
    CHECK(forelli_rudin_constant(1, 6.0, 0.0) == doctest::Approx(6.0 * kPi));
    CHECK(is_divergent(forelli_rudin_constant(1, 2.0, 0.0)));
    CHECK(is_divergent(forelli_rudin_constant(1, 4.0, -1.0)));
    CHECK_FALSE(is_divergent(forelli_rudin_constant(1, 4.0, -0.5)));
}

TEST_CASE("forelli-rudin integral closed form") {
    const CPoint base = CPoint::base_point(1);
    CHECK(forelli_rudin_integral(base, 4.0, 0.0) == doctest::Approx(4.0 * kPi));
    // scaling exponent s - t - n - 1 = 2 at rho = 2
    CHECK(forelli_rudin_integral(pt1(0.0, 2.0), 4.0, 0.0) == doctest::Approx(kPi));
    CHECK(is_divergent(forelli_rudin_integral(base, 4.0, -1.0)));
}

TEST_CASE("kernel norm closed forms") {
    const CPoint base = CPoint::base_point(1);
    CHECK(kernel_norm(base, 2.0) == doctest::Approx(1.0 / (2.0 * std::sqrt(kPi))));
    CHECK(kernel_norm(pt1(0.0, 2.0), 2.0) == doctest::Approx(1.0 / (4.0 * std::sqrt(kPi))));
    // C(1,6,0) = 6 pi, so ||K|| at the base point for p = 3 is
    // (1/(4 pi)) (6 pi)^(1/3).
    CHECK(kernel_norm(base, 3.0) ==
          doctest::Approx(std::pow(6.0 * kPi, 1.0 / 3.0) / (4.0 * kPi)));
    CHECK(kernel_norm(base, 2.0) == doctest::Approx(std::sqrt(kernel_diag(base))));
    CHECK_THROWS_AS(kernel_norm(base, 1.0), std::invalid_argument);
}

TEST_CASE("normalized kernel has unit L2 mass by quadrature") {
    for (unsigned n : {1u, 2u}) {
        const CPoint base = CPoint::base_point(n);
        Integrand f = [base](const CPoint& w) -> cplx {
            return cplx(normalized_kernel_abs2(base, w), 0.0);
        };
        const IntegrationResult mc = integrate_siegel(f, n, 100000, 19);
        CHECK(std::abs(mc.value.real() - 1.0) <= 3.0 * mc.std_error + 1e-12);
    }
}

TEST_CASE("kernel two-point bound with explicit constant") {
    CounterRng rng(3, 0);
    BallPoint s = BallPoint::origin(2);
    const double c = kernel_bound_constant(2);
    std::size_t violations = 0;
    for (int i = 0; i < 10000; ++i) {
        fill_uniform_unit_ball(rng, s.coords_mut());
        const CPoint z = cayley(s);
        fill_uniform_unit_ball(rng, s.coords_mut());
        const CPoint w = cayley(s);
        const double bound = c * std::pow(std::min(rho(z), rho(w)), -3.0);
        if (std::abs(bergman_kernel(z, w)) > bound * (1.0 + 1e-9)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("growth bound for closed-form test functions") {
    const CPoint base = CPoint::base_point(1);
    const TestFunction k_base = TestFunction::normalized_kernel(base);
    // |k(base)| = 1/(2 sqrt(pi)) <= (4/pi)^(1/2) * 1 * 1
    const double lhs = std::abs(k_base.eval(base));
    const double rhs = growth_constant(1, 2.0) * k_base.lp_norm(2.0);
    CHECK(k_base.lp_norm(2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lhs <= rhs);
    CHECK(growth_bound_check(k_base, 2.0, base));

    CHECK(growth_bound_check(TestFunction::zero(1), 2.0, base));
    // norms that diverge are rejected, not silently passed
    CHECK_THROWS_AS(growth_bound_check(TestFunction::resolvent_power(1, 1.0), 2.0, base),
                    std::domain_error);

    // kernel functions at random anchors and probes (bound is homogeneous
    // in f, so the normalized kernel stands in for K_w)
    CounterRng rng(77, 0);
    BallPoint s = BallPoint::origin(2);
    for (int i = 0; i < 2000; ++i) {
        fill_uniform_unit_ball(rng, s.coords_mut());
        const CPoint w = cayley(s);
        fill_uniform_unit_ball(rng, s.coords_mut());
        const CPoint z = cayley(s);
        const double p = (i % 2 == 0) ? 2.0 : 3.0;
        CHECK(growth_bound_check(TestFunction::normalized_kernel(w), p, z));
    }
}

TEST_CASE("reproducing property by quadrature at desk scale") {
    // T_V with Lebesgue V reproduces resolvent powers.
    const TestFunction f = TestFunction::resolvent_power(1, 2.0);
    const CPoint probes[] = {CPoint::base_point(1), pt1(0.0, 2.0), pt1(0.5, 1.0)};
    for (const CPoint& z : probes) {
        Integrand integrand = [&f, z](const CPoint& w) -> cplx {
            return bergman_kernel(z, w) * f.eval(w);
        };
        const IntegrationResult mc = integrate_siegel(integrand, 1, 200000, 47);
        const cplx expected = f.eval(z);
        CHECK(std::abs(mc.value - expected) <= 3.0 * mc.std_error + 1e-12);
    }
}
