#include "intrsm/orlicz.hpp"
#include "intrsm/assumptions.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/quadrature.hpp"
#include "intrsm/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace intrsm {

namespace {

constexpr double kLn10 = 2.30258509299404568402;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kE = std::exp(1.0);

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// log(e + e^x), stable for large x
double log_e_plus_exp(double x) {
    if (x > 40.0) return x + std::log1p(std::exp(1.0 - x));
    return std::log(kE + std::exp(x));
}

// log(e^e + e^x)
double log_ee_plus_exp(double x) {
    const double ee = std::exp(kE);
    if (x > 45.0) return x + std::log1p(ee * std::exp(-x));
    return std::log(ee + std::exp(x));
}

} // namespace

YoungFunction YoungFunction::power(double q) {
    if (!(q >= 1.0)) throw DomainError("young power: q >= 1");
    YoungFunction y;
    y.family_ = YoungFamily::Power;
    y.q_ = q;
    y.name_ = "power";
    return y;
}

YoungFunction YoungFunction::exp_log(double c, double theta) {
    if (!(c > 0.0) || !(theta > 0.0)) throw DomainError("young exp_log: c, theta > 0");
    YoungFunction y;
    y.family_ = YoungFamily::ExpLog;
    y.c_ = c;
    y.theta_ = theta;
    y.name_ = "exp_log";
    return y;
}

YoungFunction YoungFunction::exp_log_log(double c, double theta) {
    if (!(c > 0.0) || !(theta > 0.0)) throw DomainError("young exp_log_log: c, theta > 0");
    YoungFunction y;
    y.family_ = YoungFamily::ExpLogLog;
    y.c_ = c;
    y.theta_ = theta;
    y.name_ = "exp_log_log";
    return y;
}

YoungFunction YoungFunction::custom(std::function<double(double)> value,
                                    std::function<double(double)> log_derivative_logu,
                                    std::string name) {
    YoungFunction y;
    y.family_ = YoungFamily::Custom;
    y.custom_value_ = std::move(value);
    y.custom_log_deriv_ = std::move(log_derivative_logu);
    y.name_ = std::move(name);
    return y;
}

double YoungFunction::value(double u) const {
    const double au = std::abs(u);
    switch (family_) {
        case YoungFamily::Power:
            return std::pow(au, q_);
        case YoungFamily::ExpLog: {
            if (au == 0.0) return 0.0;
            const double e = std::log(au) + c_ * std::pow(log_e_plus_exp(std::log(au)), theta_);
            return e > 700.0 ? kInf : std::exp(e);
        }
        case YoungFamily::ExpLogLog: {
            if (au == 0.0) return 0.0;
            const double e =
                std::log(au) +
                c_ * std::pow(std::log(log_ee_plus_exp(std::log(au))), theta_);
            return e > 700.0 ? kInf : std::exp(e);
        }
        case YoungFamily::Custom:
            return custom_value_(u);
    }
    throw DomainError("unreachable young family");
}

double YoungFunction::log_derivative_logu(double x) const {
    switch (family_) {
        case YoungFamily::Power:
            return std::log(q_) + (q_ - 1.0) * x;
        case YoungFamily::ExpLog: {
            const double L = log_e_plus_exp(x);
            // Phi' = e^{c L^t} (1 + u c t L^{t-1} / (e+u)), u = e^x
            const double frac = std::exp(x - L);  // u/(e+u)
            return c_ * std::pow(L, theta_) +
                   std::log1p(frac * c_ * theta_ * std::pow(L, theta_ - 1.0));
        }
        case YoungFamily::ExpLogLog: {
            const double L = log_ee_plus_exp(x);
            const double M = std::log(L);
            const double frac = std::exp(x - L) / L;  // u/((e^e+u) log(e^e+u))
            return c_ * std::pow(M, theta_) +
                   std::log1p(frac * c_ * theta_ * std::pow(M, theta_ - 1.0));
        }
        case YoungFamily::Custom:
            return custom_log_deriv_(x);
    }
    throw DomainError("unreachable young family");
}

double YoungFunction::derivative(double u) const {
    if (!(u > 0.0)) throw DomainError("young derivative: u > 0");
    return std::exp(log_derivative_logu(std::log(u)));
}

std::string outcome_name(OrliczOutcome o) {
    switch (o) {
        case OrliczOutcome::MapsInto: return "MapsInto";
        case OrliczOutcome::NotSubset: return "NotSubset";
        case OrliczOutcome::Inconclusive: return "Inconclusive";
    }
    return {};
}

std::string OrliczVerdict::to_json() const {
    std::string out = "{\"verdict\": \"" + outcome_name(verdict) +
                      "\", \"criterion_integral_log\": " + fmt(criterion_integral_log) +
                      ", \"log_increments\": [";
    for (size_t i = 0; i < log_increments.size(); ++i) {
        if (i) out += ", ";
        out += fmt(log_increments[i]);
    }
    out += "]";
    if (threshold_comparison) {
        out += ", \"threshold\": {\"success_c\": " + fmt(threshold_comparison->success_c) +
               ", \"failure_c\": " + fmt(threshold_comparison->failure_c) + ", \"display\": \"" +
               threshold_comparison->display + "\"}";
    }
    if (!note.empty()) out += ", \"note\": \"" + note + "\"";
    out += "}";
    return out;
}

ThresholdRecord analytic_thresholds(const ModelSpec& spec, const YoungFunction& phi) {
    const bool frac = spec.op.family == OperatorFamily::FractionalLaplacian;
    const double Kt = spec.K * spec.t;
    const double Kt_tilde = spec.K_tilde * spec.t;
    const double th = phi.theta();
    ThresholdRecord rec;

    auto check_theta = [&] {
        if (std::abs(th - spec.pot.theta) > 1e-9)
            throw NoMatchError("analytic_thresholds: Young exponent must match the potential");
    };

    if (frac && spec.pot.family == PotentialFamily::PowerLog &&
        phi.family() == YoungFamily::ExpLog) {
        check_theta();
        const double d = spec.op.d, a = spec.op.a;
        rec.success_c = Kt / std::pow(2.0 * d + 4.0 * a, th);
        rec.failure_c = Kt_tilde / std::pow(d + 4.0 * a, th);
        rec.display = "success: c < Kt/(2d+4a)^theta; failure: c > K~t/(d+4a)^theta";
        return rec;
    }
    if (!frac && spec.pot.family == PotentialFamily::Power &&
        phi.family() == YoungFamily::ExpLog) {
        check_theta();
        const double denom = std::pow(2.0 * spec.op.m_inner(), th);
        rec.success_c = Kt / denom;
        rec.failure_c = Kt_tilde / denom;
        rec.display = "success: c < Kt/(2m^{1/(2a)})^theta; failure: c > K~t/(2m^{1/(2a)})^theta";
        return rec;
    }
    const bool iter_style =
        (frac && spec.pot.family == PotentialFamily::PowerIterLog) ||
        (!frac && spec.pot.family == PotentialFamily::PowerLog);
    if (iter_style && phi.family() == YoungFamily::ExpLogLog) {
        check_theta();
        if (th > 1.0) {
            rec.success_c = Kt;
            rec.failure_c = Kt_tilde;
            rec.display = "success: c < Kt; failure: c > K~t";
            return rec;
        }
        if (std::abs(th - 1.0) <= 1e-12) {
            rec.success_c = Kt - 1.0;
            rec.failure_c = Kt_tilde + 1.0;
            rec.display = "success: c < Kt-1; failure: c > K~t+1";
            return rec;
        }
        throw NoMatchError(
            "analytic_thresholds: theta < 1 iterated-log scale carries no thresholds "
            "(upper bound not integrable)");
    }
    throw NoMatchError("analytic_thresholds: unmatched (operator, potential, Young) triple");
}

// ---- criterion integrals ------------------------------------------------------

namespace {

// log of the integral of exp(log_integrand(x)) over u-decades
// [x_lo, 10 ln10], (10 ln10, 20 ln10], ... n_cutoffs blocks of 10 decades
struct IncrementSeries {
    std::vector<double> log_increments;
    double total_log = -kInf;
};

IncrementSeries decade_increments(const std::function<double(double)>& log_integrand,
                                  double x_lo, int n_blocks) {
    IncrementSeries out;
    double lo = x_lo;
    for (int n = 1; n <= n_blocks; ++n) {
        const double hi = 10.0 * n * kLn10;
        if (hi <= lo) {
            out.log_increments.push_back(-kInf);
            continue;
        }
        const double inc = log_integrate(log_integrand, lo, hi, 1e-6);
        out.log_increments.push_back(inc);
        out.total_log = log_add(out.total_log, inc);
        lo = hi;
    }
    return out;
}

// geometric decay of the increments: last three ratios clearly below 1
bool increments_geometric(const std::vector<double>& inc) {
    const size_t n = inc.size();
    if (n < 4) return false;
    for (size_t i = n - 3; i < n; ++i) {
        if (inc[i] == -kInf) continue;
        if (inc[i] - inc[i - 1] > std::log(0.92)) return false;
    }
    return true;
}

// non-summable: the last four increments do not decay
bool increments_divergent(const std::vector<double>& inc) {
    const size_t n = inc.size();
    if (n < 5) return false;
    for (size_t i = n - 4; i < n; ++i) {
        if (inc[i] == -kInf || inc[i - 1] == -kInf) return false;
        if (inc[i] - inc[i - 1] < std::log(0.95)) return false;
    }
    return true;
}

void require_l1_orlicz(const ModelSpec& spec) {
    const auto rr = classify_regime(spec);
    if (rr.regime != Regime::L1OrliczRegime)
        throw RegimeError("criterion requires the L1/Orlicz regime (got " +
                          regime_name(rr.regime) + ")");
}

} // namespace

OrliczVerdict criterion_a(const ModelSpec& spec, const YoungFunction& phi, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("criterion_a: lambda > 0");
    require_l1_orlicz(spec);

    OrliczVerdict v;
    if (phi.family() == YoungFamily::Power && std::abs(phi.q() - 1.0) <= 1e-12) {
        v.verdict = OrliczOutcome::MapsInto;
        v.note = "L1 contraction fast path (q = 1)";
        return v;
    }

    RateEvaluator ev(spec);
    const double log_lambda = std::log(lambda);
    auto log_integrand = [&](double x) {
        const double r = ev.alpha_logu(x + log_lambda);
        return phi.log_derivative_logu(x) - ev.log_rate_upper(r);
    };
    const double x_lo = std::log(spec.kappa) - log_lambda;
    const auto series = decade_increments(log_integrand, x_lo, 6);
    v.log_increments = series.log_increments;
    v.criterion_integral_log = series.total_log;

    const bool numeric_conv = increments_geometric(series.log_increments);
    try {
        ThresholdRecord rec = analytic_thresholds(spec, phi);
        v.threshold_comparison = rec;
        if (phi.c() < rec.success_c * (1.0 - 1e-12)) {
            v.verdict = OrliczOutcome::MapsInto;
            v.note = "below the closed-form success threshold";
        } else {
            v.verdict = OrliczOutcome::Inconclusive;
            v.note = phi.c() > rec.failure_c ? "above the failure threshold: no information from "
                                               "the upper criterion"
                                             : "inside the threshold gap";
        }
    } catch (const NoMatchError& e) {
        const std::string why = e.what();
        if (why.find("not integrable") != std::string::npos) {
            v.verdict = OrliczOutcome::Inconclusive;
            v.note = "upper bound not integrable";
        } else if (numeric_conv) {
            v.verdict = OrliczOutcome::MapsInto;
            v.note = "numeric certification: increments decay geometrically";
        } else {
            v.verdict = OrliczOutcome::Inconclusive;
            v.note = "no geometric decay detected";
        }
    }
    return v;
}

OrliczVerdict criterion_b(const ModelSpec& spec, const WitnessSpec& w,
                          const YoungFunction& phi, std::span<const double> lambda_grid) {
    require_l1_orlicz(spec);
    {
        const CheckReport wr = check_witness(spec, w);
        if (wr.verdict == Verdict::Fail)
            throw HypothesisError("criterion_b: witness hypotheses fail: " + wr.evidence.note);
    }
    std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
    if (grid.empty()) grid = {1e-3, 3e-2, 1.0, 3e1, 1e3};

    OrliczVerdict v;
    RateEvaluator ev(spec, w);
    bool all_divergent = true;
    for (double lambda : grid) {
        const double log_lambda = std::log(lambda);
        auto log_integrand = [&](double x) {
            const double r = ev.gamma_logu(x + log_lambda);
            return phi.log_derivative_logu(x) - ev.log_rate_witness(r);
        };
        const double x_lo = ev.log_u0_gamma() - log_lambda;
        const auto series = decade_increments(log_integrand, x_lo, 6);
        if (lambda == grid.front()) {
            v.log_increments = series.log_increments;
            v.criterion_integral_log = series.total_log;
        }
        if (!increments_divergent(series.log_increments)) all_divergent = false;
    }

    try {
        ThresholdRecord rec = analytic_thresholds(spec, phi);
        v.threshold_comparison = rec;
        if (phi.c() > rec.failure_c * (1.0 + 1e-12)) {
            v.verdict = OrliczOutcome::NotSubset;
            v.note = "above the closed-form failure threshold";
            return v;
        }
    } catch (const NoMatchError&) {
        // fall through to the numeric decision
    }
    if (all_divergent) {
        v.verdict = OrliczOutcome::NotSubset;
        v.note = "numeric divergence for every lambda in the grid";
    } else {
        v.verdict = OrliczOutcome::Inconclusive;
        if (v.note.empty()) v.note = "no non-summable growth detected for some lambda";
    }
    return v;
}

OrliczClassification classify_orlicz(const ModelSpec& spec, const WitnessSpec& w,
                                     const YoungFunction& phi,
                                     std::span<const double> lambda_grid) {
    std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
    if (grid.empty()) grid = {1e-3, 3e-2, 1.0, 3e1, 1e3};
    OrliczClassification out;
    // the upper criterion needs one good lambda: keep the best verdict
    bool got = false;
    for (double l : grid) {
        OrliczVerdict cand = criterion_a(spec, phi, l);
        if (!got || cand.verdict == OrliczOutcome::MapsInto) {
            out.a = cand;
            got = true;
        }
        if (out.a.verdict == OrliczOutcome::MapsInto) break;
    }
    out.b = criterion_b(spec, w, phi, grid);
    return out;
}

// ---- Luxemburg norm -----------------------------------------------------------

std::pair<double, double> luxemburg_norm(const YoungFunction& phi,
                                         const std::function<double(double)>& h_radial,
                                         const ModelSpec& spec, const LuxemburgOptions& opt) {
    const int d = spec.op.d;
    const double sd = sphere_surface(d);

    auto env_density = [&](double r, bool upper) {
        const double core = spec.log_f1(std::max(r, 1e-300)) - std::log(spec.g.value(r));
        const double log_c10 = std::log(opt.C10);
        return std::exp(2.0 * (upper ? core + log_c10 : core - log_c10)) * sd *
               std::pow(r, d - 1);
    };

    auto mass = [&](bool upper) {
        auto f = [&](double r) { return env_density(r, upper); };
        return integrate(f, 1e-9, 64.0, 1e-9).value + integrate_to_infinity(f, 64.0, 1e-9).value;
    };
    const double z_lo = opt.normalize ? mass(false) : 1.0;
    const double z_hi = opt.normalize ? mass(true) : 1.0;

    auto modular = [&](double lambda, bool upper) -> double {
        auto f = [&](double r) {
            const double hv = std::abs(h_radial(r));
            const double ph = phi.value(hv / lambda);
            if (!std::isfinite(ph)) return 1e290;  // forces divergence upstream
            return ph * env_density(r, upper);
        };
        try {
            const double val = integrate(f, 1e-9, 64.0, 1e-7, 0.0, 6000).value +
                               integrate_to_infinity(f, 64.0, 1e-7).value;
            return val / (upper ? z_hi : z_lo);
        } catch (const ConvergenceError&) {
            return kInf;
        }
    };

    auto norm_against = [&](bool upper) -> double {
        double llo = -45.0, lhi = 45.0;
        const double at_hi = modular(std::exp(lhi), upper);
        if (!(at_hi <= 1.0)) {
            if (!upper)
                throw NonIntegrable("luxemburg_norm: lower-envelope modular diverges for "
                                    "every scale");
            return kInf;
        }
        if (modular(std::exp(llo), upper) <= 1.0) return 0.0;  // h vanishes a.e.
        while (lhi - llo > opt.tol) {
            const double mid = 0.5 * (llo + lhi);
            (modular(std::exp(mid), upper) <= 1.0 ? lhi : llo) = mid;
        }
        return std::exp(lhi);
    };

    const double n_lo = norm_against(false);
    const double n_hi = norm_against(true);
    return {std::min(n_lo, n_hi), std::max(n_lo, n_hi)};
}

} // namespace intrsm
