#include "intrsm/assumptions.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/quadrature.hpp"
#include "intrsm/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace intrsm {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kE = std::exp(1.0);

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double ratio_g_logf(const ModelSpec& spec, double r) {
    return spec.g.value(r) / std::abs(spec.f.log_value(r));
}

struct ScanSummary {
    double last_rise_r = 0.0;   // 0 when monotone over the whole window
    double slope = 0.0;         // d log h / d log log r over the last decades
    double slope_consistency = 0.0;
    double last_value = 0.0;
};

// scan h on a log grid over [lo, 1e12]: eventual-decrease window and the
// log-log-log slope used for limit classification
ScanSummary scan_tail(const std::function<double(double)>& h, double lo) {
    const double hi = 1e12;
    const int per_decade = 20;
    const double y0 = std::log(lo), y1 = std::log(hi);
    const int n = static_cast<int>((y1 - y0) / std::log(10.0) * per_decade);
    ScanSummary s;
    double prev = h(std::exp(y0));
    for (int i = 1; i <= n; ++i) {
        const double r = std::exp(y0 + (y1 - y0) * i / n);
        const double v = h(r);
        if (v >= prev) s.last_rise_r = r;
        prev = v;
    }
    const double r3 = 1e12, r2 = 1e11, r1 = 1e10;
    const double h1 = h(r1), h2 = h(r2), h3 = h(r3);
    auto slope = [](double ra, double rb, double ha, double hb) {
        return (std::log(hb) - std::log(ha)) /
               (std::log(std::log(rb)) - std::log(std::log(ra)));
    };
    const double s12 = slope(r1, r2, h1, h2);
    const double s23 = slope(r2, r3, h2, h3);
    s.slope = s23;
    s.slope_consistency = std::abs(s23 - s12);
    s.last_value = h3;
    return s;
}

bool builtin_pair(const ModelSpec& spec) {
    return spec.pot.family != PotentialFamily::Custom;
}

} // namespace

std::string condition_name(Condition c) {
    switch (c) {
        case Condition::A1: return "A1";
        case Condition::A2profile: return "A2profile";
        case Condition::A3: return "A3";
        case Condition::DecayToZero: return "DecayToZero";
        case Condition::UltracontraCondC: return "UltracontraCondC";
        case Condition::EtaCondition: return "EtaCondition";
        case Condition::SigmaCondition: return "SigmaCondition";
        case Condition::CondRateOmega: return "CondRateOmega";
    }
    return {};
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return {};
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::AsymptoticallyUltracontractive: return "AsymptoticallyUltracontractive";
        case Regime::L1OrliczRegime: return "L1OrliczRegime";
        case Regime::Borderline: return "Borderline";
    }
    return {};
}

std::string CheckReport::to_json() const {
    std::string out = "{\"condition\": \"" + condition_name(condition) + "\", \"verdict\": \"" +
                      verdict_name(verdict) + "\"";
    if (empirical_constant) out += ", \"empirical_constant\": " + fmt(*empirical_constant);
    out += ", \"evidence\": {\"max_ratio\": " + fmt(evidence.max_ratio) +
           ", \"at_location\": " + fmt(evidence.at_location) +
           ", \"refinement_depth\": " + std::to_string(evidence.refinement_depth);
    if (!evidence.note.empty()) out += ", \"note\": \"" + evidence.note + "\"";
    for (const auto& [k, v] : evidence.values) out += ", \"" + k + "\": " + fmt(v);
    out += "}}";
    return out;
}

// ---- A1 -----------------------------------------------------------------------

namespace {

// int_{|y|>1, |x-y|>1} f(|x-y|) f(|y|) dy for scalar radius x, d = 1
double a1_integral_1d(const Profile& f, double x, double rel_tol) {
    auto fv = [&](double r) { return std::exp(f.log_value(r)); };
    // two symmetric far segments: 2 * int_1^inf f(u) f(u+x) du
    auto far = [&](double u) { return fv(u) * fv(u + x); };
    double total = 2.0 * integrate(far, 1.0, 64.0, rel_tol).value;
    total += 2.0 * integrate_to_infinity(far, 64.0, rel_tol).value;
    // middle segment between the two bumps
    if (x > 2.0) {
        auto mid = [&](double y) { return fv(x - y) * fv(y); };
        total += integrate_split(mid, 1.0, x - 1.0, {0.5 * x}, rel_tol).value;
    }
    return total;
}

// same integral for d in {2,3} via the radial-angular decomposition
double a1_integral_radial(const Profile& f, double x, int d, double rel_tol) {
    auto fv = [&](double r) { return std::exp(f.log_value(r)); };
    auto inner = [&](double s) {
        // angular average of f(|x - s w|) over the sphere, cut at distance 1
        auto dist = [&](double c) { return std::sqrt(x * x + s * s - 2.0 * x * s * c); };
        if (d == 2) {
            auto ig = [&](double phi) {
                const double t = dist(std::cos(phi));
                return t > 1.0 ? fv(t) : 0.0;
            };
            return 2.0 * integrate(ig, 0.0, kPi, rel_tol * 10, 0.0, 600).value;
        }
        auto ig = [&](double th) {
            const double t = dist(std::cos(th));
            return t > 1.0 ? fv(t) * std::sin(th) : 0.0;
        };
        return 2.0 * kPi * integrate(ig, 0.0, kPi, rel_tol * 10, 0.0, 600).value;
    };
    auto rad = [&](double s) { return std::pow(s, d - 1) * fv(s) * inner(s); };
    double total = integrate(rad, 1.0, 64.0, rel_tol, 0.0, 1200).value;
    total += integrate_to_infinity(rad, 64.0, rel_tol).value;
    return total;
}

// Monte Carlo fallback for d > 3: y sampled radially from f(s) s^{d-1} on
// (1, inf) by tabulated inverse CDF
double a1_integral_mc(const Profile& f, double x, int d, double* ci) {
    const int table_n = 600;
    const double s_hi = 1e6;
    std::vector<double> grid(table_n + 1), cdf(table_n + 1, 0.0);
    auto dens = [&](double s) {
        return std::exp(f.log_value(s) + (d - 1) * std::log(s));
    };
    for (int i = 0; i <= table_n; ++i)
        grid[i] = std::exp(std::log(1.0) + (std::log(s_hi) - 0.0) * i / table_n);
    for (int i = 1; i <= table_n; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (dens(grid[i - 1]) + dens(grid[i])) * (grid[i] - grid[i - 1]);
    const double z_radial = cdf[table_n];
    const double z = z_radial * sphere_surface(d);

    std::mt19937_64 rng(0x51a7eb01u);
    auto uniform = [&] { return (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54; };
    auto sample_s = [&] {
        const double u = uniform() * z_radial;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        size_t i = std::max<size_t>(1, it - cdf.begin());
        const double w = (u - cdf[i - 1]) / std::max(1e-300, cdf[i] - cdf[i - 1]);
        return grid[i - 1] + w * (grid[i] - grid[i - 1]);
    };
    auto normal = [&] {
        const double u1 = uniform(), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> dir(d);
    for (int i = 0; i < n; ++i) {
        const double s = sample_s();
        double norm2 = 0.0;
        for (int k = 0; k < d; ++k) {
            dir[k] = normal();
            norm2 += dir[k] * dir[k];
        }
        // distance from x e_1 to s * dir/|dir|
        const double c = dir[0] / std::sqrt(norm2);
        const double t = std::sqrt(std::max(0.0, x * x + s * s - 2.0 * x * s * c));
        const double w = t > 1.0 ? std::exp(f.log_value(t)) : 0.0;
        sum += w;
        sum2 += w * w;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    if (ci) *ci = 1.96 * std::sqrt(var / n) * z;
    return z * mean;
}

} // namespace

CheckReport check_A1(const ModelSpec& spec, std::span<const double> x_radii) {
    CheckReport rep;
    rep.condition = Condition::A1;
    std::vector<double> grid(x_radii.begin(), x_radii.end());
    if (grid.empty()) grid = {1.0, 2.0, 5.0, 10.0, 50.0, 200.0};

    const int d = spec.op.d;
    auto eval_sup = [&](double rel_tol) {
        double sup = 0.0, at = 0.0;
        for (double x : grid) {
            double integral;
            if (d == 1)
                integral = a1_integral_1d(spec.f, x, rel_tol);
            else if (d <= 3)
                integral = a1_integral_radial(spec.f, x, d, rel_tol);
            else
                integral = a1_integral_mc(spec.f, x, d, nullptr);
            const double ratio = integral / std::exp(spec.f.log_value(x));
            if (ratio > sup) {
                sup = ratio;
                at = x;
            }
        }
        return std::pair{sup, at};
    };

    try {
        const auto coarse = eval_sup(1e-6);
        const auto fine = eval_sup(d <= 3 ? 1e-8 : 1e-6);
        rep.evidence.max_ratio = fine.first;
        rep.evidence.at_location = fine.second;
        rep.evidence.refinement_depth = 2;
        rep.empirical_constant = fine.first;
        const double drift = std::abs(fine.first - coarse.first) / fine.first;
        rep.evidence.values.emplace_back("refinement_drift", drift);
        rep.verdict = drift <= 0.05 ? Verdict::Pass : Verdict::Inconclusive;
    } catch (const ConvergenceError& e) {
        rep.verdict = Verdict::Fail;
        rep.evidence.note = std::string("divergence detected: ") + e.what();
    }
    return rep;
}

CheckReport check_A2_profile(const ModelSpec& spec) {
    CheckReport rep;
    rep.condition = Condition::A2profile;
    if (spec.op.family == OperatorFamily::RelativisticLaplacian) {
        rep.verdict = Verdict::Pass;
        rep.evidence.note = "pass-by-citation: profile bound established in the literature";
        return rep;
    }
    // fractional family: p_t comparable to t^{-d/(2a)} min(1, (t^{1/(2a)}/|x|)^{d+2a});
    // check sup_x profile / (f wedge 1) over x and a small t window
    const int d = spec.op.d;
    const double a = spec.op.a;
    double sup = 0.0, at = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        for (int i = 0; i <= 200; ++i) {
            const double x = std::pow(10.0, -2.0 + 5.0 * i / 200.0);
            const double prof = std::min(std::pow(t, -d / (2.0 * a)),
                                         t * std::pow(x, -(d + 2.0 * a)));
            const double cap = std::min(1.0, std::pow(x, -(d + 2.0 * a)));
            const double ratio = prof / cap;
            if (ratio > sup) {
                sup = ratio;
                at = x;
            }
        }
    }
    rep.empirical_constant = sup;
    rep.evidence.max_ratio = sup;
    rep.evidence.at_location = at;
    rep.verdict = std::isfinite(sup) ? Verdict::Pass : Verdict::Fail;
    return rep;
}

CheckReport check_A3(const ModelSpec& spec) {
    CheckReport rep;
    rep.condition = Condition::A3;
    try {
        const auto dc = derive_constants(spec.pot);
        rep.empirical_constant = dc.C6;
        rep.evidence.max_ratio = dc.C6;
        rep.evidence.at_location = spec.pot.activation();
        rep.verdict = Verdict::Pass;
    } catch (const GridError& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.evidence.note = e.what();
    }
    return rep;
}

CheckReport check_decay_to_zero(const ModelSpec& spec) {
    CheckReport rep;
    rep.condition = Condition::DecayToZero;
    const double lo = std::max({2.0, spec.f_one_radius * 1.01,
                                spec.g.activation_radius() * 1.01});
    auto h = [&](double r) { return ratio_g_logf(spec, r); };
    const ScanSummary s = scan_tail(h, lo);
    rep.evidence.at_location = s.last_rise_r;
    rep.evidence.values.emplace_back("loglog_slope", s.slope);
    rep.evidence.values.emplace_back("slope_consistency", s.slope_consistency);
    rep.evidence.values.emplace_back("last_value", s.last_value);
    rep.empirical_constant = s.last_value;

    if (builtin_pair(spec)) {
        // closed-form dichotomies per family
        const bool frac = spec.op.family == OperatorFamily::FractionalLaplacian;
        bool pass;
        switch (spec.pot.family) {
            case PotentialFamily::Power: pass = !frac && spec.pot.theta < 1.0; break;
            case PotentialFamily::PowerLog: pass = !frac || spec.pot.theta < 1.0; break;
            default: pass = true; break;  // iterated log decays for every theta
        }
        rep.verdict = pass ? Verdict::Pass : Verdict::Fail;
        rep.evidence.note = "analytic family dichotomy; numeric scan attached";
        return rep;
    }
    const bool decreasing = s.last_rise_r < 1e10;
    if (!decreasing) {
        rep.verdict = Verdict::Fail;
        rep.evidence.note = "not eventually decreasing on the certified window";
        return rep;
    }
    if (s.slope_consistency > std::max(0.2 * std::abs(s.slope), 5e-3)) {
        rep.verdict = Verdict::Inconclusive;
        rep.evidence.note = "slope estimate unstable across decades";
        return rep;
    }
    rep.verdict = s.slope <= -0.01 ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail) rep.evidence.note = "ratio tends to a positive level";
    return rep;
}

CheckReport check_ultracontractivity_condition(const ModelSpec& spec) {
    CheckReport rep;
    rep.condition = Condition::UltracontraCondC;
    const double lo = std::max({2.0, spec.f_one_radius * 1.01,
                                spec.g.activation_radius() * 1.01});
    auto h = [&](double r) { return ratio_g_logf(spec, r); };
    const ScanSummary s = scan_tail(h, lo);
    rep.evidence.values.emplace_back("loglog_slope", s.slope);
    rep.evidence.values.emplace_back("last_value", s.last_value);
    rep.empirical_constant = s.last_value;

    if (builtin_pair(spec)) {
        const bool frac = spec.op.family == OperatorFamily::FractionalLaplacian;
        bool pass;
        switch (spec.pot.family) {
            case PotentialFamily::Power: pass = frac || spec.pot.theta >= 1.0; break;
            case PotentialFamily::PowerLog: pass = frac && spec.pot.theta >= 1.0; break;
            default: pass = false; break;
        }
        rep.verdict = pass ? Verdict::Pass : Verdict::Fail;
        rep.evidence.note = "analytic family dichotomy; numeric scan attached";
        return rep;
    }
    // conservative numeric path: require a stabilized positive level
    const double rel_flat = std::abs(s.slope);
    if (rel_flat < 0.01 && s.slope_consistency < 5e-3 && s.last_value > 0.0) {
        rep.verdict = Verdict::Pass;
        return rep;
    }
    if (s.slope <= -0.01) {
        rep.verdict = Verdict::Fail;  // decays toward zero
        return rep;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.evidence.note = "ratio increasing without a stabilized limit";
    return rep;
}

RegimeReport classify_regime(const ModelSpec& spec) {
    RegimeReport out;
    CheckReport cond_c = check_ultracontractivity_condition(spec);
    CheckReport decay = check_decay_to_zero(spec);
    if (cond_c.verdict == Verdict::Pass)
        out.regime = Regime::AsymptoticallyUltracontractive;
    else if (decay.verdict == Verdict::Pass)
        out.regime = Regime::L1OrliczRegime;
    else
        out.regime = Regime::Borderline;
    out.reports.push_back(std::move(cond_c));
    out.reports.push_back(std::move(decay));
    return out;
}

CheckReport check_witness(const ModelSpec& spec, const WitnessSpec& w) {
    CheckReport rep;
    rep.condition = Condition::EtaCondition;
    rep.evidence.values.emplace_back("b", w.b);

    bool ok = w.b < 2.0;
    std::string notes;
    if (!ok) notes += "b >= 2;";

    // eventual decrease of ((d-1) log r + log eta)/|log f|
    const double lo = std::max({2.0, spec.f_one_radius * 1.01,
                                w.eta.activation_radius() * 1.01});
    auto map = [&](double r) {
        return ((spec.op.d - 1.0) * std::log(r) + w.eta.log_value(r)) /
               std::abs(spec.f.log_value(r));
    };
    const ScanSummary ms = scan_tail(map, lo);
    rep.evidence.values.emplace_back("eta_map_last_rise_r", ms.last_rise_r);
    if (ms.last_rise_r >= 1e10) {
        ok = false;
        notes += "eta map not eventually decreasing;";
    }

    // sigma(r) < r and sup f(sigma(r))/f(r), tracked in log space
    double log_sup = -std::numeric_limits<double>::infinity();
    double sup_at = 0.0;
    double log_sup_partial = log_sup;
    bool sigma_ok = true;
    const int n = 240;
    for (int i = 0; i <= n; ++i) {
        const double r = std::pow(10.0, 12.0 * i / n);
        const double sg = w.sigma(r);
        if (!(sg < r) || !(sg > 0.0)) {
            sigma_ok = false;
            break;
        }
        const double log_ratio = spec.f.log_value(sg) - spec.f.log_value(r);
        if (log_ratio > log_sup) {
            log_sup = log_ratio;
            sup_at = r;
        }
        if (r <= 1e11) log_sup_partial = std::max(log_sup_partial, log_ratio);
    }
    if (!sigma_ok) {
        ok = false;
        notes += "sigma(r) not in (0, r);";
    } else if (log_sup > log_sup_partial + 1e-9 && log_sup > std::log(1e6)) {
        ok = false;
        notes += "f(sigma)/f unbounded on the scan;";
    }
    rep.empirical_constant = std::exp(std::min(log_sup, 700.0));
    rep.evidence.max_ratio = *rep.empirical_constant;
    rep.evidence.at_location = sup_at;
    rep.evidence.values.emplace_back("log_sup_f_sigma_over_f", log_sup);

    // 1/eta tail integrability
    double tail = -1.0;
    const double tail_from = std::max(lo, 10.0);
    switch (w.eta.kind()) {
        case ProfileKind::EtaRLog2:
            tail = 1.0 / std::log(tail_from);
            break;
        case ProfileKind::EtaRLogRLogLog2:
            tail = 1.0 / std::log(std::log(tail_from));
            break;
        case ProfileKind::PowerG: {
            const double th = w.eta.params().theta;
            if (th > 1.0)
                tail = std::pow(tail_from, 1.0 - th) / (th - 1.0);
            break;
        }
        default:
            break;
    }
    if (tail < 0.0) {
        try {
            auto inv_eta = [&](double r) { return std::exp(-w.eta.log_value(r)); };
            tail = integrate_to_infinity(inv_eta, tail_from, 1e-8).value;
        } catch (const ConvergenceError&) {
            ok = false;
            notes += "1/eta tail not integrable;";
            tail = std::numeric_limits<double>::infinity();
        }
    }
    rep.evidence.values.emplace_back("inv_eta_tail_integral", tail);

    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    rep.evidence.note = notes;
    return rep;
}

CheckReport estimate_omega(const ModelSpec& spec) {
    CheckReport rep;
    rep.condition = Condition::CondRateOmega;

    const auto analytic = analytic_omega(spec.op, spec.pot);
    if (analytic) {
        rep.verdict = Verdict::Pass;
        rep.empirical_constant = *analytic;
        rep.evidence.note = "analytic family value; numeric scan attached";
    }

    // numeric scan: ratio(s) = g(f^{-1}(c s^l)) / g(f^{-1}(s)), extrapolated
    // linearly in 1/|log s| over three small-s probes
    double omega_hat = 0.0;
    bool stable = true;
    const double log10 = std::log(10.0);
    for (double l : {1.5, 2.0}) {
        for (double c : {0.5, 2.0}) {
            double vals[3];
            double invs[3];
            int j = 0;
            for (double k : {40.0, 50.0, 60.0}) {
                const double log_s = -k * log10;
                const double r1 = spec.f.invert_log(std::log(c) + l * log_s);
                const double r0 = spec.f.invert_log(log_s);
                vals[j] = spec.g.value(r1) / spec.g.value(r0);
                invs[j] = -1.0 / log_s;
                ++j;
            }
            // two-point linear extrapolations to 1/|log s| = 0 must agree
            auto extrap = [&](int i0, int i1) {
                return vals[i1] + (vals[i1] - vals[i0]) / (invs[i0] - invs[i1]) * invs[i1];
            };
            const double e01 = extrap(0, 1), e12 = extrap(1, 2);
            if (std::abs(e01 - e12) > 2e-3 * std::max(1.0, std::abs(e12))) stable = false;
            const double w = std::log(std::max(1e-300, e12)) / std::log(l);
            omega_hat = std::max(omega_hat, w);
        }
    }
    rep.evidence.values.emplace_back("omega_numeric", omega_hat);
    if (!analytic) {
        if (stable) {
            rep.verdict = Verdict::Pass;
            rep.empirical_constant = omega_hat;
        } else {
            rep.verdict = Verdict::Inconclusive;
            rep.evidence.note = "small-s ratio not stabilized";
        }
    }
    return rep;
}

} // namespace intrsm
