#pragma once

#include "intrsm/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace intrsm {

enum class Condition {
    A1,                // convolution bound of the jump profile
    A2profile,         // heat-kernel profile bound
    A3,                // shift-doubling of the potential profile
    DecayToZero,       // g / |log f| eventually decreasing to 0
    UltracontraCondC,  // g >= C |log f| eventually
    EtaCondition,      // witness growth limit b < 2 (+ eventual decrease)
    SigmaCondition,    // sigma(r) < r and sup f(sigma)/f finite
    CondRateOmega,     // inverse-profile scaling exponent
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string condition_name(Condition c);
std::string verdict_name(Verdict v);

struct CheckEvidence {
    double max_ratio = 0.0;
    double at_location = 0.0;
    int refinement_depth = 0;
    std::string note;
    std::vector<std::pair<std::string, double>> values;
};

struct CheckReport {
    Condition condition = Condition::A1;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<double> empirical_constant;
    CheckEvidence evidence;

    std::string to_json() const;
};

/// Empirical convolution constant: sup over the x grid of
/// (int_{|y|>1,|x-y|>1} f(|x-y|) f(|y|) dy) / f(|x|). Deterministic
/// quadrature for d <= 3, importance-sampled Monte Carlo beyond.
/// A divergent tail comes back as Fail, not an exception.
CheckReport check_A1(const ModelSpec& spec, std::span<const double> x_radii = {});

/// Heat-kernel profile bound. Closed-form two-sided profile for the
/// fractional family; the relativistic family is a pass-by-citation.
CheckReport check_A2_profile(const ModelSpec& spec);

CheckReport check_A3(const ModelSpec& spec);

CheckReport check_decay_to_zero(const ModelSpec& spec);

CheckReport check_ultracontractivity_condition(const ModelSpec& spec);

enum class Regime { AsymptoticallyUltracontractive, L1OrliczRegime, Borderline };
std::string regime_name(Regime r);

struct RegimeReport {
    Regime regime = Regime::Borderline;
    std::vector<CheckReport> reports;
};

RegimeReport classify_regime(const ModelSpec& spec);

/// Witness hypotheses in one report: b < 2 with eventual decrease,
/// sigma(r) < r, finite sup f(sigma(r))/f(r), and 1/eta integrable at
/// infinity. empirical_constant carries the sigma ratio supremum.
CheckReport check_witness(const ModelSpec& spec, const WitnessSpec& w);

/// Exponent omega: analytic per family where known, otherwise a small-s
/// scan of g(f^{-1}(c s^lambda)) / g(f^{-1}(s)) with Richardson
/// extrapolation in 1/|log s|.
CheckReport estimate_omega(const ModelSpec& spec);

} // namespace intrsm
