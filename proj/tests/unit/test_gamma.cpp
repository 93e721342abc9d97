#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "siegel/gamma.hpp"

using siegel::factorial_exact;
using siegel::gamma_fn;

TEST_CASE("gamma at classical points") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055160273).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(2.5) == doctest::Approx(1.3293403881791370205).epsilon(1e-13));
}

TEST_CASE("gamma matches the library route across the contract range") {
    // Log-spaced sweep of [1e-3, 170]; std::tgamma is the independent oracle.
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = std::min(
            170.0,
            std::exp(std::log(1e-3) + (std::log(170.0) - std::log(1e-3)) * i / 2000.0));
        const double mine = gamma_fn(x);
        const double ref = std::tgamma(x);
        worst = std::max(worst, std::abs(mine - ref) / ref);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("gamma recurrence") {
    for (double x : {0.01, 0.3, 1.7, 9.2, 43.5}) {
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
    }
}

TEST_CASE("gamma domain and range errors") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.5), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(171.0), std::range_error);
}

TEST_CASE("exact factorials") {
    CHECK(factorial_exact(0) == 1);
    CHECK(factorial_exact(1) == 1);
    CHECK(factorial_exact(5) == 120);
    CHECK(factorial_exact(20) == 2432902008176640000ULL);
    CHECK_THROWS_AS(factorial_exact(21), std::range_error);
}
