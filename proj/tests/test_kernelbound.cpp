#include <doctest.h>

#include "intrsm/builtin.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/kernelbound.hpp"
#include "intrsm/quadrature.hpp"

#include <cmath>
#include <vector>

using namespace intrsm;

namespace {
ModelSpec frac_spec() { return builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0); }

std::vector<double> v1(double x) { return {x}; }
} // namespace

TEST_CASE("indicator zeroes the kernel inside the envelope radius") {
    auto spec = frac_spec();
    auto r = gamma_kernel(spec, 1.0, v1(1.5), v1(10.0), GammaMethod::Quadrature);
    CHECK(r.log_value == -std::numeric_limits<double>::infinity());
}

TEST_CASE("kernel symmetry is exact and tau-monotonicity holds") {
    auto spec = frac_spec();
    const auto a = gamma_kernel(spec, 1.0, v1(10.0), v1(5.0), GammaMethod::Quadrature);
    const auto b = gamma_kernel(spec, 1.0, v1(5.0), v1(10.0), GammaMethod::Quadrature);
    CHECK(a.log_value == b.log_value);  // bitwise: same panels, commutative products

    double prev = std::numeric_limits<double>::infinity();
    for (double tau : {0.5, 1.0, 2.0, 4.0}) {
        const auto g = gamma_kernel(spec, tau, v1(10.0), v1(5.0), GammaMethod::Quadrature);
        CHECK(g.log_value < prev);
        prev = g.log_value;
    }
}

TEST_CASE("quadrature and Monte Carlo agree within 3 joint standard errors") {
    auto spec = frac_spec();
    GammaOptions opt;
    opt.samples = 400000;
    opt.seed = 17;
    int agree = 0, total = 0;
    for (double tau : {0.5, 1.5}) {
        for (double xx : {6.0, 10.0}) {
            for (double yy : {xx, 3.0, -8.0}) {
                const auto q = gamma_kernel(spec, tau, v1(xx), v1(yy), GammaMethod::Quadrature);
                const auto m = gamma_kernel(spec, tau, v1(xx), v1(yy), GammaMethod::MonteCarlo, opt);
                ++total;
                const double band = 3.0 * std::max(m.ci_halfwidth_log, 1e-3) + 3.0 * 1e-3;
                if (std::abs(q.log_value - m.log_value) <= band) ++agree;
            }
        }
    }
    CHECK(agree == total);
}

TEST_CASE("Monte Carlo path is deterministic and thread-invariant") {
    auto spec = frac_spec();
    GammaOptions a;
    a.samples = 100000;
    a.seed = 5;
    a.threads = 1;
    GammaOptions b = a;
    b.threads = 4;
    const auto r1 = gamma_kernel(spec, 1.0, v1(8.0), v1(4.0), GammaMethod::MonteCarlo, a);
    const auto r2 = gamma_kernel(spec, 1.0, v1(8.0), v1(4.0), GammaMethod::MonteCarlo, b);
    CHECK(r1.log_value == r2.log_value);
    CHECK(r1.ci_halfwidth_log == r2.ci_halfwidth_log);
    // swapped arguments: canonical ordering keeps it bit-identical
    const auto r3 = gamma_kernel(spec, 1.0, v1(4.0), v1(8.0), GammaMethod::MonteCarlo, a);
    CHECK(r3.log_value == r1.log_value);
}

TEST_CASE("kernel in d=2 evaluates and stays symmetric") {
    OperatorSpec op{OperatorFamily::FractionalLaplacian, 2, 0.5, 0.0};
    PotentialSpec pot{PotentialFamily::PowerLog, 0.5, 1.0, 0.0, {}, {}};
    auto spec = ModelSpec::make(op, pot, 1.0);
    std::vector<double> x{6.0, 1.0}, y{-3.0, 4.0};
    GammaOptions opt;
    opt.rel_tol = 1e-4;
    const auto q = gamma_kernel(spec, 1.0, x, y, GammaMethod::Quadrature, opt);
    const auto qs = gamma_kernel(spec, 1.0, y, x, GammaMethod::Quadrature, opt);
    CHECK(std::isfinite(q.log_value));
    CHECK(q.log_value == doctest::Approx(qs.log_value).epsilon(1e-6));

    GammaOptions mc;
    mc.samples = 300000;
    mc.seed = 3;
    const auto m = gamma_kernel(spec, 1.0, x, y, GammaMethod::MonteCarlo, mc);
    CHECK(std::abs(m.log_value - q.log_value) <= 3.0 * m.ci_halfwidth_log + 0.02);
}

TEST_CASE("kernel under the exponentially decaying profile") {
    auto spec = builtin_model(BuiltinPairing::RelativisticPower, 0.5, 1.0);
    GammaOptions opt;
    opt.samples = 400000;
    opt.seed = 4;
    for (double xx : {5.0, 9.0}) {
        const auto q = gamma_kernel(spec, 1.0, v1(xx), v1(4.0), GammaMethod::Quadrature);
        const auto m = gamma_kernel(spec, 1.0, v1(xx), v1(4.0), GammaMethod::MonteCarlo, opt);
        CHECK(std::isfinite(q.log_value));
        CHECK(std::abs(q.log_value - m.log_value) <= 3.0 * m.ci_halfwidth_log + 0.01);
    }
}

TEST_CASE("kernel in d=3 evaluates, symmetric, cross-validated") {
    OperatorSpec op{OperatorFamily::FractionalLaplacian, 3, 0.5, 0.0};
    PotentialSpec pot{PotentialFamily::PowerLog, 0.5, 1.0, 0.0, {}, {}};
    auto spec = ModelSpec::make(op, pot, 1.0);
    std::vector<double> x{6.0, 1.0, 2.0}, y{-3.0, 4.0, 1.0};
    GammaOptions opt;
    opt.rel_tol = 1e-3;
    const auto q = gamma_kernel(spec, 1.0, x, y, GammaMethod::Quadrature, opt);
    const auto qs = gamma_kernel(spec, 1.0, y, x, GammaMethod::Quadrature, opt);
    CHECK(std::isfinite(q.log_value));
    CHECK(q.log_value == doctest::Approx(qs.log_value).epsilon(5e-3));

    GammaOptions mc;
    mc.samples = 400000;
    mc.seed = 8;
    const auto m = gamma_kernel(spec, 1.0, x, y, GammaMethod::MonteCarlo, mc);
    CHECK(std::abs(m.log_value - q.log_value) <= 3.0 * m.ci_halfwidth_log + 0.05);
}

TEST_CASE("quadrature beyond d=3 is rejected") {
    OperatorSpec op{OperatorFamily::FractionalLaplacian, 4, 0.5, 0.0};
    PotentialSpec pot{PotentialFamily::PowerLog, 0.5, 1.0, 0.0, {}, {}};
    auto spec = ModelSpec::make(op, pot, 1.0);
    std::vector<double> x{6, 0, 0, 0}, y{7, 0, 0, 0};
    CHECK_THROWS_AS(gamma_kernel(spec, 1.0, x, y, GammaMethod::Quadrature), DimensionError);
}

TEST_CASE("two-sided kernel envelope") {
    auto spec = frac_spec();
    // inside the envelope radius the kernel term vanishes: plain C bounds
    auto e0 = q_envelope(spec, 1.0, v1(1.0), v1(7.0));
    CHECK(e0.log_lower == doctest::Approx(-std::log(spec.C)));
    CHECK(e0.log_upper == doctest::Approx(std::log(spec.C)));

    auto e = q_envelope(spec, 1.0, v1(9.0), v1(9.0));
    CHECK(e.log_lower <= e.log_upper);
    // symmetric in the two points
    auto es = q_envelope(spec, 1.0, v1(6.0), v1(11.0));
    auto es2 = q_envelope(spec, 1.0, v1(11.0), v1(6.0));
    CHECK(es.log_upper == es2.log_upper);
    CHECK(es.log_lower == es2.log_lower);

    CHECK_THROWS_AS(q_envelope(spec, 0.5, v1(9.0), v1(9.0)), DomainError);
}

TEST_CASE("far-field upper envelope exceeds the bare constant") {
    auto spec = frac_spec();
    auto e = q_envelope(spec, 5.0, v1(50.0), v1(50.0));
    CHECK(e.log_upper > std::log(spec.C));
}

TEST_CASE("ground-state envelope") {
    auto spec = frac_spec();
    auto e = groundstate_envelope(spec, 0.0, 3.0);
    // f1 caps to 1 near the origin, g sits on its plateau value 1
    CHECK(e.log_upper == doctest::Approx(std::log(3.0)));
    CHECK(e.log_lower == doctest::Approx(-std::log(3.0)));
    for (double r : {0.5, 2.0, 25.0})
        CHECK(groundstate_envelope(spec, r, 3.0).log_upper -
                  groundstate_envelope(spec, r, 3.0).log_lower ==
              doctest::Approx(2.0 * std::log(3.0)));

    // squared upper envelope is radially integrable (normalizable state)
    for (BuiltinPairing p : {BuiltinPairing::FractionalPowerLog, BuiltinPairing::RelativisticPower}) {
        auto s = builtin_model(p, 0.5, 1.0);
        auto dens = [&](double r) {
            return std::exp(2.0 * groundstate_envelope(s, r, 1.0).log_upper);
        };
        const double mass =
            integrate(dens, 1e-6, 64.0, 1e-8).value + integrate_to_infinity(dens, 64.0, 1e-8).value;
        CHECK(std::isfinite(mass));
        CHECK(mass > 0.0);
    }
}

TEST_CASE("capped-profile convolution constants") {
    auto spec = frac_spec();
    auto rep = check_DJP(spec);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(*rep.empirical_constant > 0.0);
    CHECK(std::isfinite(*rep.empirical_constant));
    // pointwise constant with y = 0 direction capped by 1: C9_log >= 0 always
    for (const auto& [k, v] : rep.evidence.values)
        if (k == "C9_log") CHECK(v >= 0.0);
}
