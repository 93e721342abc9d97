#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "siegel/geometry.hpp"
#include "siegel/rng.hpp"
#include "siegel/sampling.hpp"

using namespace siegel;

namespace {

CPoint pt1(double re, double im) { return CPoint({}, cplx(re, im)); }

CPoint pt2(cplx z1, cplx zn) { return CPoint({z1}, zn); }

BallPoint random_ball_point(CounterRng& rng, std::size_t n) {
    BallPoint b = BallPoint::origin(n);
    fill_uniform_unit_ball(rng, b.coords_mut());
    return b;
}

}  // namespace

TEST_CASE("rho at reference points") {
    CHECK(rho(CPoint::base_point(2)) == doctest::Approx(1.0));
    CHECK(rho(pt2(cplx(1.0, 0.0), cplx(0.0, 1.0))) == doctest::Approx(0.0));
    CHECK(rho(pt2(cplx(1.0, 0.0), cplx(0.0, 3.0))) == doctest::Approx(2.0));
}

TEST_CASE("point validation") {
    CHECK_THROWS_AS(CPoint({}, cplx(std::nan(""), 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(BallPoint({cplx(1.0, 0.0)}), std::invalid_argument);
    // Boundary points stay representable through the unchecked route.
    const BallPoint boundary = BallPoint::unchecked({cplx(1.0, 0.0)});
    CHECK(boundary.abs2() == doctest::Approx(1.0));
}

TEST_CASE("two-point form diagonal and conjugate symmetry") {
    const CPoint base = CPoint::base_point(1);
    CHECK(rho(base, base).real() == doctest::Approx(1.0));
    CHECK(rho(base, base).imag() == doctest::Approx(0.0));
    CHECK(rho(base, pt1(0.0, 2.0)).real() == doctest::Approx(1.5));

    CounterRng rng(11, 0);
    for (int i = 0; i < 200; ++i) {
        const CPoint z = cayley(random_ball_point(rng, 2));
        const CPoint w = cayley(random_ball_point(rng, 2));
        const cplx a = rho(z, w);
        const cplx b = std::conj(rho(w, z));
        // Exact arithmetic identity: same products in the same order.
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
        CHECK(std::abs(rho(z, z) - cplx(rho(z), 0.0)) <= 1e-15 * std::abs(rho(z)));
        // The real part stays positive on interior pairs (principal powers
        // depend on it).
        CHECK(rho(z, w).real() > 0.0);
    }
}

TEST_CASE("cayley reference values") {
    const CPoint at_origin = cayley(BallPoint::origin(2));
    CHECK(at_origin.zn().real() == doctest::Approx(0.0));
    CHECK(at_origin.zn().imag() == doctest::Approx(1.0));

    const CPoint z = cayley(BallPoint({cplx(-1.0 / 3.0, 0.0)}));
    CHECK(z.zn().real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(z.zn().imag() == doctest::Approx(2.0).epsilon(1e-14));

    const BallPoint xi = cayley_inverse(pt1(0.0, 2.0));
    CHECK(xi.coords()[0].real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(xi.coords()[0].imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("cayley maps the ball into the domain and round-trips") {
    CounterRng rng(7, 0);
    for (int i = 0; i < 10000; ++i) {
        const BallPoint xi = random_ball_point(rng, 2);
        const CPoint z = cayley(xi);
        CHECK(rho(z) > 0.0);
        const CPoint back = cayley(cayley_inverse(z));
        CHECK(std::abs(back.zn() - z.zn()) <= 1e-12 * std::max(1.0, std::abs(z.zn())));
        CHECK(std::abs(back.zprime()[0] - z.zprime()[0]) <= 1e-12);
        CHECK(cayley_inverse(z).abs2() < 1.0);
    }
}

TEST_CASE("cayley inverse-square identity") {
    CounterRng rng(3, 0);
    const CPoint base = CPoint::base_point(2);
    for (int i = 0; i < 2000; ++i) {
        const CPoint z = cayley(random_ball_point(rng, 2));
        const double lhs = cayley_inverse(z).abs2();
        const double rhs = 1.0 - rho(z) / std::norm(rho(z, base));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("jacobian reference values and composition") {
    CHECK(cayley_jacobian(BallPoint::origin(1)) == doctest::Approx(4.0));
    CHECK(cayley_jacobian(BallPoint::origin(2)) == doctest::Approx(4.0));
    CHECK(cayley_inverse_jacobian(CPoint::base_point(1)) == doctest::Approx(0.25));
    CHECK(cayley_inverse_jacobian(pt1(0.0, 2.0)) == doctest::Approx(4.0 / 81.0));

    CounterRng rng(5, 0);
    for (int i = 0; i < 2000; ++i) {
        const BallPoint xi = random_ball_point(rng, 2);
        const CPoint z = cayley(xi);
        CHECK(cayley_jacobian(xi) * cayley_inverse_jacobian(z) ==
              doctest::Approx(1.0).epsilon(1e-11));
        CHECK(cayley_inverse_jacobian(z) > 0.0);
    }
}

TEST_CASE("cayley pole and exterior errors") {
    CHECK_THROWS_AS(cayley(BallPoint::unchecked({cplx(-1.0, 0.0)})), std::domain_error);
    CHECK_THROWS_AS(cayley_inverse(pt1(0.0, -1.0)), std::domain_error);
}

TEST_CASE("normalizing automorphism factorization") {
    // dilation and recentering compose into the base normalization
    const CPoint z = pt1(0.0, 4.0);
    const CPoint u = pt1(0.0, 8.0);
    const CPoint h = recenter(z, u);
    CHECK(h.zn().imag() == doctest::Approx(8.0));
    const CPoint moved = dilate(1.0 / std::sqrt(rho(z)), h);
    CHECK(moved.zn().imag() == doctest::Approx(2.0));
    const CPoint direct = normalize_to_base(z, u);
    CHECK(direct.zn().real() == doctest::Approx(0.0));
    CHECK(direct.zn().imag() == doctest::Approx(2.0));
}

TEST_CASE("normalizing automorphism fixes the base point and preserves heights") {
    CounterRng rng(17, 0);
    for (int i = 0; i < 2000; ++i) {
        const CPoint z = cayley(random_ball_point(rng, 2));
        const CPoint u = cayley(random_ball_point(rng, 2));
        const CPoint at_base = normalize_to_base(z, z);
        CHECK(std::abs(at_base.zn() - cplx(0.0, 1.0)) <= 1e-12);
        CHECK(std::abs(at_base.zprime()[0]) <= 1e-12);

        const CPoint moved = normalize_to_base(z, u);
        CHECK(rho(moved) > 0.0);
        // rho(sigma_z(u)) rho(z) = rho(u): the dilation factor is exact.
        CHECK(rho(moved) * rho(z) == doctest::Approx(rho(u)).epsilon(1e-11));

        const CPoint back = normalize_from_base(z, moved);
        CHECK(std::abs(back.zn() - u.zn()) <= 1e-10 * std::max(1.0, std::abs(u.zn())));
        CHECK(std::abs(back.zprime()[0] - u.zprime()[0]) <= 1e-10);
    }
}

TEST_CASE("form scales under the normalizing automorphism") {
    CounterRng rng(23, 0);
    for (int i = 0; i < 2000; ++i) {
        const CPoint z = cayley(random_ball_point(rng, 2));
        const CPoint u = cayley(random_ball_point(rng, 2));
        const CPoint v = cayley(random_ball_point(rng, 2));
        const cplx lhs = rho(normalize_to_base(z, u), normalize_to_base(z, v));
        const cplx rhs = rho(u, v) / rho(z);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
    }
}

TEST_CASE("moebius involution properties") {
    CounterRng rng(29, 0);
    for (int i = 0; i < 2000; ++i) {
        const BallPoint xi = random_ball_point(rng, 2);
        const BallPoint eta = random_ball_point(rng, 2);

        const BallPoint at_zero = moebius(xi, BallPoint::origin(2));
        CHECK(std::abs(at_zero.coords()[0] - xi.coords()[0]) <= 1e-13);
        CHECK(std::abs(at_zero.coords()[1] - xi.coords()[1]) <= 1e-13);

        const BallPoint at_self = moebius(xi, xi);
        CHECK(std::sqrt(at_self.abs2()) <= 1e-12);

        const BallPoint twice = moebius(xi, moebius(xi, eta));
        CHECK(std::abs(twice.coords()[0] - eta.coords()[0]) <= 1e-12);
        CHECK(std::abs(twice.coords()[1] - eta.coords()[1]) <= 1e-12);
    }
    CHECK_THROWS_AS(moebius(BallPoint::unchecked({cplx(1.0, 0.0)}), BallPoint::origin(1)),
                    std::domain_error);
}

TEST_CASE("modulus identity against the resolvent") {
    CounterRng rng(31, 0);
    for (int i = 0; i < 1000; ++i) {
        const CPoint z = cayley(random_ball_point(rng, 2));
        const double lhs = 2.0 * std::abs(rho(z, CPoint::base_point(2)));
        const double rhs = std::abs(z.zn() + cplx(0.0, 1.0));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        CHECK(std::abs(rho_base(z) - rho(z, CPoint::base_point(2))) <= 1e-15 * rhs);
    }
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(rho(CPoint::base_point(1), CPoint::base_point(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(recenter(CPoint::base_point(1), CPoint::base_point(2)),
                    std::invalid_argument);
}
