#include <doctest.h>

#include "intrsm/errors.hpp"
#include "intrsm/special.hpp"

#include <cmath>

using namespace intrsm;

namespace {
constexpr double kPi = 3.14159265358979323846;

// closed forms for half-integer orders, used as the independent oracle for
// the integral-representation path
double oracle_k_half(double r) { return std::sqrt(kPi / (2.0 * r)) * std::exp(-r); }
double oracle_k_3half(double r) { return oracle_k_half(r) * (1.0 + 1.0 / r); }
double oracle_k_5half(double r) { return oracle_k_half(r) * (1.0 + 3.0 / r + 3.0 / (r * r)); }
} // namespace

TEST_CASE("bessel_k closed-form fast path") {
    CHECK(bessel_k(0.5, 1.0) == doctest::Approx(0.4610685055).epsilon(1e-9));
    CHECK(bessel_k(1.5, 2.0) == doctest::Approx(std::sqrt(kPi / 4.0) * std::exp(-2.0) * 1.5)
                                    .epsilon(1e-12));
}

TEST_CASE("integral representation matches half-integer closed forms to 1e-8") {
    for (double r : {0.01, 0.05, 0.3, 1.0, 2.0, 7.5, 20.0, 50.0}) {
        CHECK(bessel_k_integral(0.5, r) == doctest::Approx(oracle_k_half(r)).epsilon(1e-8));
        CHECK(bessel_k_integral(1.5, r) == doctest::Approx(oracle_k_3half(r)).epsilon(1e-8));
        CHECK(bessel_k_integral(2.5, r) == doctest::Approx(oracle_k_5half(r)).epsilon(1e-8));
    }
}

TEST_CASE("large-argument limit K_mu(r) sqrt(r) e^r -> sqrt(pi/2)") {
    const double v = bessel_k_integral(2.0, 50.0) * std::sqrt(50.0) * std::exp(50.0);
    CHECK(v == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(0.05));
}

TEST_CASE("small-argument limit K_mu(r) r^mu -> 2^{mu-1} Gamma(mu)") {
    for (double mu : {0.75, 1.0, 1.7}) {
        const double r = 1e-4;
        const double v = bessel_k_integral(mu, r) * std::pow(r, mu);
        CHECK(v == doctest::Approx(std::pow(2.0, mu - 1.0) * std::tgamma(mu)).epsilon(0.02));
    }
}

TEST_CASE("bessel_k rejects bad arguments") {
    CHECK_THROWS_AS(bessel_k_integral(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_k_integral(1.0, 0.0), DomainError);
}

TEST_CASE("fractional constant: d=1, a=1/2 gives the Cauchy density constant 1/pi") {
    CHECK(fractional_levy_constant(1, 0.5) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
}

TEST_CASE("sphere surfaces") {
    CHECK(sphere_surface(1) == doctest::Approx(2.0));
    CHECK(sphere_surface(2) == doctest::Approx(2.0 * kPi));
    CHECK(sphere_surface(3) == doctest::Approx(4.0 * kPi));
}
