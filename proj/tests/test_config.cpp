#include <doctest.h>

#include "intrsm/config.hpp"
#include "intrsm/errors.hpp"

#include <cmath>

using namespace intrsm;

TEST_CASE("canonical configs round-trip") {
    for (auto p : {BuiltinPairing::FractionalPowerLog, BuiltinPairing::FractionalIterLog,
                   BuiltinPairing::RelativisticPower, BuiltinPairing::RelativisticPowerLog}) {
        const std::string text = builtin_config_json(p, 0.5, 2.0);
        auto cfg = parse_model_config(text);
        CHECK(cfg.spec.t == doctest::Approx(2.0));
        CHECK(cfg.spec.pot.theta == doctest::Approx(0.5));
        CHECK(cfg.spec.K * cfg.spec.K_tilde == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(cfg.witness_from_config);  // natural witness attached
        CHECK(cfg.witness.b < 2.0);
    }
}

TEST_CASE("unknown keys are schema errors") {
    CHECK_THROWS_AS(parse_model_config(R"({"operator": {"family": "fractional", "d": 1,
        "a": 0.5}, "potential": {"family": "power_log", "theta": 0.5}, "extra": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_model_config(R"({"operator": {"family": "fractional", "d": 1,
        "a": 0.5, "typo": 2}, "potential": {"family": "power_log", "theta": 0.5}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_model_config(R"({"operator": {"family": "fractional", "d": 1,
        "a": 0.5}, "potential": {"family": "power_log", "theta": 0.5},
        "witness": {"eta": "r_log2", "sigma": "r_half", "b": 1}})"),
                    ConfigError);
}

TEST_CASE("domain validation") {
    // a outside (0,1)
    CHECK_THROWS_AS(parse_model_config(R"({"operator": {"family": "fractional", "d": 1,
        "a": 1.5}, "potential": {"family": "power_log", "theta": 0.5}})"),
                    ConfigError);
    // m on the fractional family
    CHECK_THROWS_AS(parse_model_config(R"({"operator": {"family": "fractional", "d": 1,
        "a": 0.5, "m": 1.0}, "potential": {"family": "power_log", "theta": 0.5}})"),
                    ConfigError);
    // missing m on the relativistic family
    CHECK_THROWS_AS(parse_model_config(R"({"operator": {"family": "relativistic", "d": 1,
        "a": 0.5}, "potential": {"family": "power", "theta": 0.5}})"),
                    ConfigError);
    // invalid JSON
    CHECK_THROWS_AS(parse_model_config("{"), ConfigError);
    // unreadable file
    CHECK_THROWS_AS(load_model_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("constants overrides and witness selection") {
    auto cfg = parse_model_config(R"({
        "operator": {"family": "relativistic", "d": 1, "a": 0.5, "m": 1.0},
        "potential": {"family": "power", "theta": 0.5, "C2": 1.0},
        "time": 1.0,
        "constants": {"kappa": 2.0, "rho": 3.0, "K_tilde": 7.0},
        "witness": {"eta": "r_power2", "sigma": "r_minus_1"}})");
    CHECK(cfg.spec.kappa == doctest::Approx(2.0));
    CHECK(cfg.spec.rho == doctest::Approx(3.0));
    CHECK(cfg.spec.K_tilde == doctest::Approx(7.0));
    // K stays at its derived value unless overridden
    CHECK(cfg.spec.K == doctest::Approx(1.0 / std::pow(4.0, 1.5)).epsilon(1e-12));
    CHECK(cfg.witness_from_config);
    CHECK(cfg.witness.b == doctest::Approx(0.0));
    CHECK(cfg.witness.sigma.kind == SigmaKind::MinusOne);
}
