#include <doctest.h>

#include "intrsm/errors.hpp"
#include "intrsm/quadrature.hpp"

#include <cmath>

using namespace intrsm;

TEST_CASE("gk15 panel is exact on low-degree polynomials") {
    auto r = gk15_panel([](double x) { return 5 * x * x * x * x - x + 2; }, -1.0, 3.0);
    // antiderivative x^5 - x^2/2 + 2x
    const double exact = (std::pow(3, 5) - 4.5 + 6) - (-1 - 0.5 - 2);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("adaptive integrate reaches tight tolerance") {
    auto r = integrate([](double x) { return std::exp(-x) * std::cos(10 * x); }, 0.0, 20.0, 1e-12);
    const double exact = (1.0 - std::exp(-20.0) * (std::cos(200.0) - 10 * std::sin(200.0))) / 101.0;
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("kink split handles |x-1|") {
    auto f = [](double x) { return std::abs(x - 1.0); };
    auto r = integrate_split(f, 0.0, 2.0, {1.0}, 1e-12);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("heavy tail converges, divergent tail is detected") {
    auto heavy = [](double x) { return std::pow(x, -1.5); };
    auto r = integrate_to_infinity(heavy, 1.0, 1e-10);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));

    auto critical = [](double x) { return 1.0 / x; };
    CHECK_THROWS_AS(integrate_to_infinity(critical, 1.0, 1e-10, 300), ConvergenceError);
}

TEST_CASE("log_integrate matches linear result and survives huge magnitudes") {
    auto lf = [](double x) { return x; };  // integrand e^x
    const double got = log_integrate(lf, 0.0, 10.0, 1e-10);
    CHECK(got == doctest::Approx(std::log(std::exp(10.0) - 1.0)).epsilon(1e-10));

    const double huge = log_integrate(lf, 0.0, 5000.0, 1e-8);
    // integral = e^5000 - 1, log = 5000 up to e^{-5000}
    CHECK(huge == doctest::Approx(5000.0).epsilon(1e-12));
}

TEST_CASE("log_add basics") {
    CHECK(log_add(0.0, 0.0) == doctest::Approx(std::log(2.0)));
    CHECK(log_add(-1e308, 3.0) == doctest::Approx(3.0));
}
