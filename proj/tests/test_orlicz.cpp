#include <doctest.h>

#include "intrsm/builtin.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/orlicz.hpp"

#include <cmath>
#include <vector>

using namespace intrsm;

namespace {
bool midpoint_convex(const YoungFunction& phi) {
    // Phi((a+b)/2) <= (Phi(a)+Phi(b))/2 on a log grid, plus evenness and 0 at 0
    if (phi.value(0.0) != 0.0) return false;
    for (int i = -40; i <= 40; i += 4) {
        for (int j = i + 4; j <= 44; j += 4) {
            const double a = std::exp(0.25 * i), b = std::exp(0.25 * j);
            if (phi.value(0.5 * (a + b)) > 0.5 * (phi.value(a) + phi.value(b)) * (1 + 1e-12))
                return false;
            if (phi.value(-a) != phi.value(a)) return false;
        }
    }
    return true;
}
} // namespace

TEST_CASE("built-in Young functions are convex, even, vanish at zero") {
    CHECK(midpoint_convex(YoungFunction::power(1.0)));
    CHECK(midpoint_convex(YoungFunction::power(2.5)));
    CHECK(midpoint_convex(YoungFunction::exp_log(0.7, 0.5)));
    CHECK(midpoint_convex(YoungFunction::exp_log_log(1.2, 1.5)));
}

TEST_CASE("log-space derivative matches a finite difference") {
    auto phi = YoungFunction::exp_log(0.8, 0.5);
    for (double u : {0.5, 3.0, 1e4, 1e10}) {
        const double h = u * 1e-6;
        const double fd = (phi.value(u + h) - phi.value(u - h)) / (2 * h);
        CHECK(phi.derivative(u) == doctest::Approx(fd).epsilon(1e-5));
    }
    auto pw = YoungFunction::power(3.0);
    CHECK(pw.derivative(2.0) == doctest::Approx(3.0 * 4.0).epsilon(1e-12));
}

TEST_CASE("analytic thresholds per pairing") {
    SUBCASE("fractional + power-log + exp-log") {
        auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
        auto rec = analytic_thresholds(spec, YoungFunction::exp_log(0.1, 0.5));
        CHECK(rec.success_c == doctest::Approx(spec.K / std::pow(4.0, 0.5)).epsilon(1e-12));
        CHECK(rec.failure_c == doctest::Approx(spec.K_tilde / std::pow(3.0, 0.5)).epsilon(1e-12));
        CHECK(rec.success_c < rec.failure_c);
    }
    SUBCASE("iterated-log scale, theta cases") {
        auto spec = builtin_model(BuiltinPairing::FractionalIterLog, 1.5, 1.0);
        auto rec = analytic_thresholds(spec, YoungFunction::exp_log_log(0.1, 1.5));
        CHECK(rec.success_c == doctest::Approx(spec.K).epsilon(1e-12));
        CHECK(rec.failure_c == doctest::Approx(spec.K_tilde).epsilon(1e-12));

        auto spec1 = builtin_model(BuiltinPairing::FractionalIterLog, 1.0, 1.0);
        auto rec1 = analytic_thresholds(spec1, YoungFunction::exp_log_log(0.1, 1.0));
        CHECK(rec1.success_c == doctest::Approx(spec1.K - 1.0).epsilon(1e-12));
        CHECK(rec1.failure_c == doctest::Approx(spec1.K_tilde + 1.0).epsilon(1e-12));

        auto spec_small = builtin_model(BuiltinPairing::FractionalIterLog, 0.5, 1.0);
        CHECK_THROWS_AS(analytic_thresholds(spec_small, YoungFunction::exp_log_log(0.1, 0.5)),
                        NoMatchError);
    }
    SUBCASE("relativistic + power + exp-log") {
        auto spec = builtin_model(BuiltinPairing::RelativisticPower, 0.5, 1.0);
        auto rec = analytic_thresholds(spec, YoungFunction::exp_log(0.1, 0.5));
        const double denom = std::pow(2.0, 0.5);  // m = 1
        CHECK(rec.success_c == doctest::Approx(spec.K / denom).epsilon(1e-12));
        CHECK(rec.failure_c == doctest::Approx(spec.K_tilde / denom).epsilon(1e-12));
    }
    SUBCASE("relativistic + power-log uses the iterated-log scale") {
        auto spec = builtin_model(BuiltinPairing::RelativisticPowerLog, 2.0, 1.0);
        auto rec = analytic_thresholds(spec, YoungFunction::exp_log_log(0.1, 2.0));
        CHECK(rec.success_c == doctest::Approx(spec.K).epsilon(1e-12));
    }
    SUBCASE("mismatches are rejected") {
        auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
        CHECK_THROWS_AS(analytic_thresholds(spec, YoungFunction::exp_log(0.1, 0.7)), NoMatchError);
        CHECK_THROWS_AS(analytic_thresholds(spec, YoungFunction::power(2.0)), NoMatchError);
    }
}

TEST_CASE("upper criterion on the power-log pairing") {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    auto rec = analytic_thresholds(spec, YoungFunction::exp_log(0.1, 0.5));

    auto good = criterion_a(spec, YoungFunction::exp_log(0.5 * rec.success_c, 0.5), 1.0);
    CHECK(good.verdict == OrliczOutcome::MapsInto);
    CHECK(good.log_increments.size() == 6);

    auto gap = criterion_a(spec, YoungFunction::exp_log(
                                     0.5 * (rec.success_c + rec.failure_c), 0.5), 1.0);
    CHECK(gap.verdict == OrliczOutcome::Inconclusive);
}

TEST_CASE("upper criterion at extreme scale parameters") {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    auto rec = analytic_thresholds(spec, YoungFunction::exp_log(0.1, 0.5));
    auto phi = YoungFunction::exp_log(0.5 * rec.success_c, 0.5);
    // the verdict is scale-robust: lambda shifts the integrand, not the tail
    CHECK(criterion_a(spec, phi, 1e-3).verdict == OrliczOutcome::MapsInto);
    CHECK(criterion_a(spec, phi, 1e3).verdict == OrliczOutcome::MapsInto);
}

TEST_CASE("upper criterion fast path and power laws") {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    CHECK(criterion_a(spec, YoungFunction::power(1.0), 1.0).verdict == OrliczOutcome::MapsInto);
    // q > 1 never certifies: the integrand grows exponentially in log u
    for (double q : {1.5, 2.0, 4.0})
        CHECK(criterion_a(spec, YoungFunction::power(q), 1.0).verdict ==
              OrliczOutcome::Inconclusive);
}

TEST_CASE("upper criterion refuses the ultracontractive regime") {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 1.5, 1.0);
    CHECK_THROWS_AS(criterion_a(spec, YoungFunction::exp_log(0.1, 1.5), 1.0), RegimeError);
}

TEST_CASE("iterated-log scale with theta < 1 gives no upper information") {
    auto spec = builtin_model(BuiltinPairing::FractionalIterLog, 0.5, 1.0);
    auto v = criterion_a(spec, YoungFunction::exp_log_log(0.3, 0.5), 1.0);
    CHECK(v.verdict == OrliczOutcome::Inconclusive);
    CHECK(v.note.find("not integrable") != std::string::npos);
}

TEST_CASE("lower criterion flags failure above the threshold") {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    auto w = builtin_witness(spec);
    auto rec = analytic_thresholds(spec, YoungFunction::exp_log(0.1, 0.5));
    std::vector<double> lambdas{0.1, 1.0, 10.0};

    auto bad = criterion_b(spec, w, YoungFunction::exp_log(2.0 * rec.failure_c, 0.5), lambdas);
    CHECK(bad.verdict == OrliczOutcome::NotSubset);

    auto gap = criterion_b(spec, w, YoungFunction::exp_log(
                                        0.5 * (rec.success_c + rec.failure_c), 0.5), lambdas);
    CHECK(gap.verdict == OrliczOutcome::Inconclusive);
}

TEST_CASE("lower criterion validates the witness") {
    auto rel = builtin_model(BuiltinPairing::RelativisticPower, 0.5, 1.0);
    // proportional sigma under the exponential profile violates the ratio bound
    auto bad_witness =
        WitnessSpec::make(rel, Profile::power_g(2.0), SigmaSpec{SigmaKind::Half, {}, {}});
    std::vector<double> lambdas{1.0};
    CHECK_THROWS_AS(
        criterion_b(rel, bad_witness, YoungFunction::exp_log(1.0, 0.5), lambdas),
        HypothesisError);
}

TEST_CASE("monotonicity in c and no contradictions across the gap") {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    auto w = builtin_witness(spec);
    auto rec = analytic_thresholds(spec, YoungFunction::exp_log(0.1, 0.5));
    std::vector<double> lambdas{0.1, 1.0, 10.0};

    bool seen_maps_into_above = false;
    const double lo = 0.5 * rec.success_c, hi = 2.0 * rec.failure_c;
    for (int i = 0; i < 7; ++i) {
        const double c = lo * std::pow(hi / lo, i / 6.0);
        auto phi = YoungFunction::exp_log(c, 0.5);
        auto a = criterion_a(spec, phi, 1.0);
        auto b = criterion_b(spec, w, phi, lambdas);
        CHECK_FALSE((a.verdict == OrliczOutcome::MapsInto &&
                     b.verdict == OrliczOutcome::NotSubset));
        // once c passes the success threshold, MapsInto must stop appearing
        if (c > rec.success_c && a.verdict == OrliczOutcome::MapsInto)
            seen_maps_into_above = true;
    }
    CHECK_FALSE(seen_maps_into_above);

    // monotonicity: smaller c keeps the MapsInto verdict
    auto a1 = criterion_a(spec, YoungFunction::exp_log(0.9 * rec.success_c, 0.5), 1.0);
    auto a2 = criterion_a(spec, YoungFunction::exp_log(0.45 * rec.success_c, 0.5), 1.0);
    CHECK(a1.verdict == OrliczOutcome::MapsInto);
    CHECK(a2.verdict == OrliczOutcome::MapsInto);
}

TEST_CASE("combined classification") {
    auto spec = builtin_model(BuiltinPairing::RelativisticPower, 0.5, 1.0);
    auto w = builtin_witness(spec);
    auto rec = analytic_thresholds(spec, YoungFunction::exp_log(0.1, 0.5));
    auto cls = classify_orlicz(spec, w, YoungFunction::exp_log(0.5 * rec.success_c, 0.5));
    CHECK(cls.a.verdict == OrliczOutcome::MapsInto);
    CHECK(cls.b.verdict == OrliczOutcome::Inconclusive);
    const std::string j = cls.a.to_json();
    CHECK(j.find("\"verdict\": \"MapsInto\"") != std::string::npos);
}

TEST_CASE("Luxemburg norm intervals") {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);

    SUBCASE("constant function, L1 norm, normalized measure") {
        auto [lo, hi] = luxemburg_norm(YoungFunction::power(1.0), [](double) { return 1.0; }, spec);
        CHECK(lo <= 1.0 + 1e-4);
        CHECK(hi >= 1.0 - 1e-4);
        CHECK(hi - lo < 1e-3);
    }
    SUBCASE("zero function") {
        auto [lo, hi] = luxemburg_norm(YoungFunction::power(2.0), [](double) { return 0.0; }, spec);
        CHECK(lo == 0.0);
        CHECK(hi == 0.0);
    }
    SUBCASE("witness function has a finite L1 envelope norm") {
        auto w = builtin_witness(spec);
        auto h = [&](double r) {
            const double g = spec.g.value(r);
            return std::exp(2.0 * std::log(g) - w.eta.log_value(r) -
                            (spec.op.d - 1.0) * std::log(std::max(r, 1e-12)) -
                            2.0 * spec.log_f1(std::max(r, 1e-12)));
        };
        LuxemburgOptions opt;
        opt.C10 = 2.0;
        auto [lo, hi] = luxemburg_norm(YoungFunction::power(1.0), h, spec, opt);
        CHECK(std::isfinite(lo));
        CHECK(std::isfinite(hi));
        CHECK(lo > 0.0);
        CHECK(lo <= hi);
    }
    SUBCASE("super-linear Young function on the witness diverges for all scales") {
        auto w = builtin_witness(spec);
        auto h = [&](double r) {
            const double g = spec.g.value(r);
            return std::exp(2.0 * std::log(g) - w.eta.log_value(r) -
                            (spec.op.d - 1.0) * std::log(std::max(r, 1e-12)) -
                            2.0 * spec.log_f1(std::max(r, 1e-12)));
        };
        CHECK_THROWS_AS(luxemburg_norm(YoungFunction::exp_log(1.0, 0.5), h, spec), NonIntegrable);
    }
}
