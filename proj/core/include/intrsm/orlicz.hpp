#pragma once

#include "intrsm/model.hpp"
#include "intrsm/rates.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace intrsm {

enum class YoungFamily { Power, ExpLog, ExpLogLog, Custom };

/// Convex even Phi with Phi(0)=0 and an exact log-space derivative,
/// log Phi'(e^x), so criterion integrands never leave log arithmetic.
class YoungFunction {
public:
    static YoungFunction power(double q);                      // |u|^q, q >= 1
    static YoungFunction exp_log(double c, double theta);      // |u| e^{c log^t(e+|u|)}
    static YoungFunction exp_log_log(double c, double theta);  // |u| e^{c log^t log(e^e+|u|)}
    static YoungFunction custom(std::function<double(double)> value,
                                std::function<double(double)> log_derivative_logu,
                                std::string name);

    double value(double u) const;
    double derivative(double u) const;  // u > 0
    double log_derivative_logu(double x) const;

    YoungFamily family() const { return family_; }
    double c() const { return c_; }
    double theta() const { return theta_; }
    double q() const { return q_; }
    const std::string& name() const { return name_; }

private:
    YoungFamily family_ = YoungFamily::Custom;
    double c_ = 0.0, theta_ = 0.0, q_ = 1.0;
    std::string name_;
    std::function<double(double)> custom_value_;
    std::function<double(double)> custom_log_deriv_;
};

enum class OrliczOutcome { MapsInto, NotSubset, Inconclusive };
std::string outcome_name(OrliczOutcome o);

struct ThresholdRecord {
    double success_c = 0.0;  // maps-into guaranteed strictly below
    double failure_c = 0.0;  // not-subset guaranteed strictly above
    std::string display;
};

/// Closed-form thresholds for the built-in (operator, potential, Young
/// family) pairings. NoMatchError when the triple is not one of them or the
/// exponents do not line up; the iterated-log pairings with theta < 1 have
/// no usable thresholds and also raise NoMatchError (with a telling message).
ThresholdRecord analytic_thresholds(const ModelSpec& spec, const YoungFunction& phi);

struct OrliczVerdict {
    OrliczOutcome verdict = OrliczOutcome::Inconclusive;
    double criterion_integral_log = 0.0;     // log of the last partial integral
    std::vector<double> log_increments;      // per-10-decade log increments
    std::optional<ThresholdRecord> threshold_comparison;
    std::string note;

    std::string to_json() const;
};

/// Upper criterion: integral of Phi'(u) / (u * w(alpha(lambda u))) classified
/// at cutoffs 10^{10n}. MapsInto from geometric increment decay or a matched
/// analytic threshold; never NotSubset. RegimeError outside the L1/Orlicz
/// regime.
OrliczVerdict criterion_a(const ModelSpec& spec, const YoungFunction& phi, double lambda);

/// Lower criterion with the witness rate: NotSubset only when the integral
/// diverges for every lambda in the grid (or the matched analytic failure
/// threshold applies). HypothesisError when the witness checks fail.
OrliczVerdict criterion_b(const ModelSpec& spec, const WitnessSpec& w,
                          const YoungFunction& phi, std::span<const double> lambda_grid);

/// Combined classification: criterion (a) over a lambda scan, criterion (b)
/// over the same grid.
struct OrliczClassification {
    OrliczVerdict a;
    OrliczVerdict b;
};
OrliczClassification classify_orlicz(const ModelSpec& spec, const WitnessSpec& w,
                                     const YoungFunction& phi,
                                     std::span<const double> lambda_grid = {});

struct LuxemburgOptions {
    double C10 = 1.0;       // ground-state envelope constant
    double tol = 1e-6;      // bisection tolerance on the norm
    bool normalize = true;  // normalize each envelope to unit mass
};

/// Luxemburg norm of a radial function against the two-sided ground-state
/// envelope measure: an interval [lower, upper], not a point.
/// NonIntegrable when even the smaller envelope modular diverges for every
/// scale.
std::pair<double, double> luxemburg_norm(const YoungFunction& phi,
                                         const std::function<double(double)>& h_radial,
                                         const ModelSpec& spec,
                                         const LuxemburgOptions& opt = {});

} // namespace intrsm
