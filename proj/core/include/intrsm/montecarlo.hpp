#pragma once

#include "intrsm/model.hpp"
#include "intrsm/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace intrsm {

/// One draw of a standard positive a-stable variable (Laplace transform
/// e^{-lambda^a}), Kanter's representation.
double kanter_positive_stable(double a, Rng& rng);

/// Standard symmetric alpha-stable (characteristic function e^{-|xi|^alpha}),
/// Chambers-Mallows-Stuck construction; alpha in (0,2).
double cms_symmetric_stable(double alpha, Rng& rng);

/// Increment of the isotropic process with symbol |xi|^{2a} over time dt:
/// scaled CMS draw in d=1, Gaussian subordination sqrt(2 S) Z for d >= 2.
std::vector<double> sample_stable_increment(double a, int d, double dt, Rng& rng);

/// Increment of the process with symbol (|xi|^2+m^{1/a})^a - m: tempered
/// subordinator by rejection (accept with probability e^{-m^{1/a} S}), then
/// Gaussian subordination. trials, when given, accumulates the number of
/// proposals (acceptance-rate diagnostics).
std::vector<double> sample_relativistic_increment(double a, double m, int d, double dt,
                                                  Rng& rng, std::uint64_t* trials = nullptr);

/// Increment of the model's driving process over dt.
std::vector<double> sample_increment(const OperatorSpec& op, double dt, Rng& rng,
                                     std::uint64_t* trials = nullptr);

struct MCConfig {
    std::uint64_t seed = 1;
    std::int64_t n_paths = 10000;
    int n_steps = 50;
    double t = 1.0;
    ModelSpec spec;
    int threads = 1;
};

struct MCResult {
    double estimate = 0.0;
    double ci_halfwidth = 0.0;
    bool pass = true;
    std::string note;
    std::vector<std::pair<std::string, double>> diagnostics;
    // generic curve rows (x, value, ci, reference); column names in curve_columns
    std::vector<std::array<double, 4>> curve;
    std::string curve_columns;

    std::string to_json() const;
    void write_curve_csv(std::ostream& os) const;
};

/// Density-vs-profile check in d=1: histogram of |X_t| on log-radius bins
/// against f(|x|) wedge 1. estimate = max/min of the per-bin ratio over
/// populated bins; pass when below ratio_cap.
MCResult verify_A2_profile(const MCConfig& cfg, double ratio_cap = 1e3);

struct GroundstateOptions {
    std::vector<double> x_grid;  // default: 10 log-spaced points in [1, 47]
    double terminal_halfwidth = std::numeric_limits<double>::infinity();
    std::function<double(double)> potential;  // radius -> V; default g(|.|)
    double spread_cap = 100.0;
};

/// Feynman-Kac ground-state probe in d=1: estimates e^{-tH} applied to the
/// terminal window on a radius grid (left-endpoint potential sums), the
/// lowest eigenvalue from a two-horizon ratio, and the spread of
/// estimate * g / f1 against the ground-state envelope shape.
/// estimate = lambda0_hat; a discretization drift > 5% under step halving is
/// flagged in diagnostics ("discretization_warning").
MCResult feynman_kac_groundstate(const MCConfig& cfg, const GroundstateOptions& opt = {});

enum class HChoice { One, IndicatorFar, WitnessH };

struct TailProbeOptions {
    std::vector<double> u_grid;  // default: 16 log-spaced levels in [0.5, 40]
    double far_radius = 10.0;    // IndicatorFar support
    GroundstateOptions gs;
};

/// Tail probe in d=1: self-normalized transformed-kernel estimates on a
/// radius grid, the measure of {Q_t h > u} under the envelope-shaped weight,
/// a Markov-bound check and a shape-level comparison against the composed
/// upper rate (single vertical shift fitted on the lower half of the grid).
MCResult tail_probe(const MCConfig& cfg, HChoice h_choice, const TailProbeOptions& opt = {});

} // namespace intrsm
