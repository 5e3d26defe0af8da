#include <doctest.h>

#include "intrsm/builtin.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace intrsm;

namespace {

std::vector<double> draws_1d(double a, double dt, int n, std::uint64_t seed,
                             bool relativistic = false, double m = 1.0) {
    Rng rng(seed, 0);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = relativistic ? sample_relativistic_increment(a, m, 1, dt, rng)[0]
                              : sample_stable_increment(a, 1, dt, rng)[0];
    return out;
}

double quantile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    return v[static_cast<size_t>(p * (v.size() - 1))];
}

} // namespace

TEST_CASE("positive stable draw matches its Laplace transform") {
    const int n = 200000;
    for (double a : {0.3, 0.5, 0.7}) {
        Rng rng(42, 7);
        for (double lam : {0.5, 1.0, 2.0}) {
            double mean = 0.0, sq = 0.0;
            Rng local(42, static_cast<std::uint64_t>(10 * lam + 100 * a));
            for (int i = 0; i < n; ++i) {
                const double s = kanter_positive_stable(a, local);
                const double v = std::exp(-lam * s);
                mean += v;
                sq += v * v;
            }
            mean /= n;
            sq = sq / n - mean * mean;
            const double se = std::sqrt(sq / n);
            const double target = std::exp(-std::pow(lam, a));
            CHECK(std::abs(mean - target) < 4.0 * se + 1e-4);
        }
    }
}

TEST_CASE("a = 1/2 in d = 1 is Cauchy") {
    auto xs = draws_1d(0.5, 1.0, 200000, 11);
    int nonpos = 0;
    for (double x : xs) nonpos += x <= 0.0;
    const double cdf0 = nonpos / double(xs.size());
    CHECK(std::abs(cdf0 - 0.5) < 0.005);
    // Cauchy quartile is exactly 1
    CHECK(quantile(xs, 0.75) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("self-similarity: median of |X_dt| scales like dt^{1/(2a)}") {
    for (double a : {0.25, 0.5, 0.75}) {
        std::vector<double> med;
        for (double dt : {0.1, 1.0, 10.0}) {
            auto xs = draws_1d(a, dt, 100000, 99);
            for (auto& x : xs) x = std::abs(x);
            med.push_back(quantile(xs, 0.5));
        }
        const double expo = 0.5 / a;
        CHECK(med[1] / med[0] == doctest::Approx(std::pow(10.0, expo)).epsilon(0.05));
        CHECK(med[2] / med[1] == doctest::Approx(std::pow(10.0, expo)).epsilon(0.05));
    }
}

TEST_CASE("tail exponent of the symmetric stable law") {
    const double a = 0.5;
    auto xs = draws_1d(a, 1.0, 400000, 123);
    for (auto& x : xs) x = std::abs(x);
    std::sort(xs.begin(), xs.end());
    // log-log regression of the empirical survival on r in [10, 1e3]
    std::vector<double> lr, ls;
    for (double r = 10.0; r <= 1000.0; r *= 2.0) {
        const auto it = std::lower_bound(xs.begin(), xs.end(), r);
        const double surv = double(xs.end() - it) / xs.size();
        if (surv <= 0.0) break;
        lr.push_back(std::log(r));
        ls.push_back(std::log(surv));
    }
    REQUIRE(lr.size() >= 5);
    const int n = static_cast<int>(lr.size());
    double mx = 0, my = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) { mx += lr[i]; my += ls[i]; }
    mx /= n; my /= n;
    for (int i = 0; i < n; ++i) {
        sxx += (lr[i] - mx) * (lr[i] - mx);
        sxy += (lr[i] - mx) * (ls[i] - my);
    }
    const double slope = sxy / sxx;
    CHECK(slope == doctest::Approx(-2.0 * a).epsilon(0.10));
}

TEST_CASE("d >= 2 subordination agrees with the d = 1 construction in law") {
    // |X| quantiles from sqrt(2 S) Z (d=2, first coordinate) vs CMS in d=1
    const int n = 150000;
    Rng rng(5, 1);
    std::vector<double> sub(n);
    for (int i = 0; i < n; ++i) sub[i] = sample_stable_increment(0.5, 2, 1.0, rng)[0];
    auto cms = draws_1d(0.5, 1.0, n, 6);
    for (double p : {0.25, 0.5, 0.75, 0.9}) {
        const double qa = quantile(sub, p), qb = quantile(cms, p);
        CHECK(qa == doctest::Approx(qb).epsilon(0.04));
    }
}

TEST_CASE("tempered sampler: tilt identity and light tails") {
    const double a = 0.5, m = 1.0;
    const int n = 100000;
    SUBCASE("acceptance rate matches e^{-m dt}") {
        for (double dt : {0.25, 1.0, 2.0}) {
            Rng rng(31, 3);
            std::uint64_t trials = 0;
            for (int i = 0; i < n; ++i) sample_relativistic_increment(a, m, 1, dt, rng, &trials);
            const double acc = double(n) / double(trials);
            const double target = std::exp(-m * dt);
            const double se = std::sqrt(target * (1 - target) / double(trials));
            CHECK(std::abs(acc - target) < 4.0 * se + 2e-3);
        }
    }
    SUBCASE("m -> 0 recovers the stable law") {
        auto rel = draws_1d(a, 1.0, n, 77, true, 1e-4);
        auto sta = draws_1d(a, 1.0, n, 78);
        for (double p : {0.1, 0.25, 0.5, 0.75, 0.9})
            CHECK(quantile(rel, p) == doctest::Approx(quantile(sta, p)).epsilon(0.06));
    }
    SUBCASE("survival slope steepens with r") {
        auto xs = draws_1d(a, 1.0, 300000, 13, true, m);
        for (auto& x : xs) x = std::abs(x);
        std::sort(xs.begin(), xs.end());
        auto surv = [&](double r) {
            return double(xs.end() - std::lower_bound(xs.begin(), xs.end(), r)) / xs.size();
        };
        const double s1 = std::log(surv(2.0) / surv(4.0)) / std::log(2.0);
        const double s2 = std::log(surv(4.0) / surv(8.0)) / std::log(2.0);
        CHECK(s2 > s1);  // heavier-than-power decay kicks in
    }
}

TEST_CASE("density-vs-profile experiment") {
    for (double a : {0.25, 0.5, 0.75}) {
        MCConfig cfg;
        cfg.seed = 2024;
        cfg.n_paths = 100000;
        cfg.t = 1.0;
        OperatorSpec op{OperatorFamily::FractionalLaplacian, 1, a, 0.0};
        PotentialSpec pot{PotentialFamily::PowerLog, 0.5, 1.0, 0.0, {}, {}};
        cfg.spec = ModelSpec::make(op, pot, 1.0);
        auto res = verify_A2_profile(cfg);
        CHECK(res.pass);
        CHECK(res.estimate < 1e3);
        // bins start past the capped region near the origin
        CHECK(res.curve.front()[0] >= 0.1);
    }
}

TEST_CASE("density-vs-profile holds for the tempered family too") {
    MCConfig cfg;
    cfg.seed = 515;
    cfg.n_paths = 80000;
    cfg.t = 1.0;
    cfg.spec = builtin_model(BuiltinPairing::RelativisticPower, 0.5, 1.0);
    auto res = verify_A2_profile(cfg);
    CHECK(res.pass);
    CHECK(res.estimate < 1e3);
}

TEST_CASE("experiments are deterministic and thread-invariant") {
    MCConfig cfg;
    cfg.seed = 7;
    cfg.n_paths = 20000;
    cfg.spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    cfg.threads = 1;
    auto r1 = verify_A2_profile(cfg);
    cfg.threads = 4;
    auto r2 = verify_A2_profile(cfg);
    CHECK(r1.to_json() == r2.to_json());

    cfg.n_paths = 2000;
    cfg.n_steps = 10;
    GroundstateOptions gopt;
    gopt.x_grid = {1.0, 2.0, 4.0};
    cfg.threads = 1;
    auto g1 = feynman_kac_groundstate(cfg, gopt);
    cfg.threads = 3;
    auto g2 = feynman_kac_groundstate(cfg, gopt);
    CHECK(g1.to_json() == g2.to_json());
}

TEST_CASE("constant potential factorizes exactly") {
    MCConfig cfg;
    cfg.seed = 3;
    cfg.n_paths = 2000;
    cfg.n_steps = 8;
    cfg.t = 1.5;
    cfg.spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    GroundstateOptions opt;
    opt.x_grid = {1.0, 3.0};
    opt.potential = [](double) { return 0.4; };
    opt.terminal_halfwidth = std::numeric_limits<double>::infinity();
    auto res = feynman_kac_groundstate(cfg, opt);
    // exp(-sum c dt) = e^{-ct} regardless of the path
    for (const auto& row : res.curve)
        CHECK(row[1] == doctest::Approx(std::exp(-0.4 * cfg.t)).epsilon(1e-12));
    // two-horizon eigenvalue ratio gives back c exactly
    CHECK(res.estimate == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("ground-state probe: eigenvalue floor and envelope spread") {
    MCConfig cfg;
    cfg.seed = 12;
    cfg.n_paths = 12000;
    cfg.n_steps = 24;
    cfg.t = 1.5;
    cfg.spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    GroundstateOptions opt;
    opt.x_grid = {1.0, 1.9, 3.6, 7.0, 13.4, 25.9, 50.0};
    opt.terminal_halfwidth = 1.0;
    auto res = feynman_kac_groundstate(cfg, opt);
    CHECK(res.pass);  // spread within the configured factor
    // H >= inf V in form sense; the potential's infimum is its plateau value 1
    CHECK(res.estimate >= 1.0 - 3.0 * res.ci_halfwidth - 0.1);
    double spread = 0.0;
    for (const auto& [k, v] : res.diagnostics)
        if (k == "envelope_ratio_spread") spread = v;
    CHECK(spread > 0.0);
    CHECK(spread <= 100.0);
}

TEST_CASE("tail probe: conservation step, Markov bound, shape flag") {
    MCConfig cfg;
    cfg.seed = 21;
    cfg.n_paths = 6000;
    cfg.n_steps = 20;
    cfg.t = 1.0;
    cfg.spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);

    SUBCASE("h == 1 concentrates at u = 1") {
        TailProbeOptions opt;
        opt.u_grid = {0.5, 0.9, 1.1, 2.0};
        auto res = tail_probe(cfg, HChoice::One, opt);
        REQUIRE(res.curve.size() == 4);
        CHECK(res.curve[0][1] + res.curve[0][2] >= 0.95);  // below u=0.5: nearly all mass
        CHECK(res.curve[3][1] - res.curve[3][2] <= 0.05);  // above u=2: nearly none
        CHECK(res.pass);
    }
    SUBCASE("witness function: Markov holds, both shape flags behave") {
        cfg.n_paths = 12000;
        auto res = tail_probe(cfg, HChoice::WitnessH);
        double markov = 0.0, shape = 0.0, lower = 0.0;
        for (const auto& [k, v] : res.diagnostics) {
            if (k == "markov_ok") markov = v;
            if (k == "shape_ok") shape = v;
            if (k == "lower_shape_ok") lower = v;
        }
        CHECK(markov == 1.0);
        CHECK(shape == 1.0);
        CHECK(lower == 1.0);
    }
    SUBCASE("far indicator is deterministic across threads") {
        cfg.n_paths = 4000;
        cfg.threads = 1;
        auto r1 = tail_probe(cfg, HChoice::IndicatorFar);
        cfg.threads = 4;
        auto r2 = tail_probe(cfg, HChoice::IndicatorFar);
        CHECK(r1.to_json() == r2.to_json());
    }
}

TEST_CASE("experiment preconditions") {
    MCConfig cfg;
    cfg.n_paths = 500;  // too few
    cfg.spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    CHECK_THROWS_AS(verify_A2_profile(cfg), InsufficientSamples);
    cfg.n_paths = 5000;
    OperatorSpec op2{OperatorFamily::FractionalLaplacian, 2, 0.5, 0.0};
    PotentialSpec pot{PotentialFamily::PowerLog, 0.5, 1.0, 0.0, {}, {}};
    cfg.spec = ModelSpec::make(op2, pot, 1.0);
    CHECK_THROWS_AS(verify_A2_profile(cfg), DimensionError);
}
