#include "intrsm/model.hpp"
#include "intrsm/errors.hpp"

#include <cmath>

namespace intrsm {

DerivedConstants derive_constants(const PotentialSpec& pot, double r_max) {
    const Profile g = pot.g_profile();
    const double r0 = pot.activation() > 0.0 ? pot.activation() : 1.0;
    double C6;
    if (pot.family != PotentialFamily::Custom) {
        // ratio g(r+1)/g(r) is decreasing for the built-in families, so the
        // supremum sits at the activation radius
        C6 = std::exp(g.log_value(r0 + 1.0) - g.log_value(r0));
    } else {
        const int per_decade = 20;
        const double y0 = std::log(r0), y1 = std::log(r_max);
        const int n = std::max(2, static_cast<int>((y1 - y0) / std::log(10.0) * per_decade));
        double sup = 0.0, sup_partial = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double r = std::exp(y0 + (y1 - y0) * i / n);
            const double ratio = std::exp(g.log_value(r + 1.0) - g.log_value(r));
            sup = std::max(sup, ratio);
            if (r <= r_max / 10.0) sup_partial = std::max(sup_partial, ratio);
        }
        if (sup - sup_partial > 1e-6 * sup)
            throw GridError("derive_constants: supremum still moving in the last decade");
        C6 = sup;
    }
    if (!(C6 >= 1.0 - 1e-12)) throw GridError("derive_constants: C6 < 1, g not nondecreasing?");
    DerivedConstants out;
    out.C6 = C6;
    out.K_tilde = 4.0 * pot.C2 * C6 * C6;
    out.K = 1.0 / out.K_tilde;
    return out;
}

ModelSpec ModelSpec::make(OperatorSpec op, PotentialSpec pot, double t) {
    if (!(t > 0.0)) throw DomainError("ModelSpec: t > 0 required");
    if (!(pot.C2 >= 1.0)) throw DomainError("ModelSpec: C2 >= 1 required");
    ModelSpec s;
    s.op = op;
    s.pot = pot;
    s.t = t;
    const DerivedConstants dc = derive_constants(pot);
    s.C6 = dc.C6;
    s.K = dc.K;
    s.K_tilde = dc.K_tilde;
    s.f = op.f_profile();
    s.g = pot.g_profile();
    s.f_one_radius = s.f.invert_log(0.0);
    return s;
}

double ModelSpec::log_f1(double r) const { return std::min(f.log_value(r), 0.0); }

double SigmaSpec::operator()(double r) const {
    switch (kind) {
        case SigmaKind::Half: return 0.5 * r;
        case SigmaKind::MinusOne: return std::max(0.5 * r, r - 1.0);
        case SigmaKind::Custom: return fn(r);
    }
    throw DomainError("unreachable sigma kind");
}

std::string SigmaSpec::name() const {
    switch (kind) {
        case SigmaKind::Half: return "r_half";
        case SigmaKind::MinusOne: return "r_minus_1";
        case SigmaKind::Custom: return custom_name.empty() ? "custom_sigma" : custom_name;
    }
    return {};
}

namespace {

// leading r-power of the built-in eta families (NaN when unknown)
double eta_leading_power(const Profile& eta) {
    switch (eta.kind()) {
        case ProfileKind::EtaRLog2:
        case ProfileKind::EtaRLogRLogLog2:
            return 1.0;
        case ProfileKind::PowerG:
            return eta.params().theta;
        default:
            return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

double estimate_b(const ModelSpec& spec, const Profile& eta) {
    const int d = spec.op.d;
    if (spec.op.family == OperatorFamily::RelativisticLaplacian) {
        // |log f| grows linearly in r; any sub-exponential eta gives 0
        return 0.0;
    }
    const double p = eta_leading_power(eta);
    if (!std::isnan(p)) return (d - 1.0 + p) / (d + 2.0 * spec.op.a);
    // custom eta: two-point fit of ratio(r) = b + c * loglog r / log r
    auto ratio = [&](double r) {
        return ((d - 1.0) * std::log(r) + eta.log_value(r)) / (-spec.f.log_value(r));
    };
    const double r1 = 1e10, r2 = 1e20;
    const double k1 = std::log(std::log(r1)) / std::log(r1);
    const double k2 = std::log(std::log(r2)) / std::log(r2);
    return (ratio(r2) * k1 - ratio(r1) * k2) / (k1 - k2);
}

WitnessSpec WitnessSpec::make(const ModelSpec& spec, Profile eta, SigmaSpec sigma) {
    WitnessSpec w;
    w.eta = std::move(eta);
    w.sigma = std::move(sigma);
    w.b = estimate_b(spec, w.eta);
    return w;
}

std::optional<double> analytic_omega(const OperatorSpec& op, const PotentialSpec& pot) {
    const bool frac = op.family == OperatorFamily::FractionalLaplacian;
    switch (pot.family) {
        case PotentialFamily::Power:
            // for the fractional family the limsup is infinite (no finite omega)
            return frac ? std::nullopt : std::optional<double>(pot.theta);
        case PotentialFamily::PowerLog:
            return frac ? std::optional<double>(pot.theta) : std::optional<double>(0.0);
        case PotentialFamily::PowerIterLog:
            return 0.0;
        case PotentialFamily::Custom:
            return std::nullopt;
    }
    return std::nullopt;
}

} // namespace intrsm

// ---- built-in pairings --------------------------------------------------------

#include "intrsm/builtin.hpp"

namespace intrsm {

std::string pairing_name(BuiltinPairing p) {
    switch (p) {
        case BuiltinPairing::FractionalPowerLog: return "fractional_power_log";
        case BuiltinPairing::FractionalIterLog: return "fractional_iter_log";
        case BuiltinPairing::RelativisticPower: return "relativistic_power";
        case BuiltinPairing::RelativisticPowerLog: return "relativistic_power_log";
    }
    return {};
}

ModelSpec builtin_model(BuiltinPairing p, double theta, double t) {
    OperatorSpec op;
    PotentialSpec pot;
    op.d = 1;
    op.a = 0.5;
    switch (p) {
        case BuiltinPairing::FractionalPowerLog:
            op.family = OperatorFamily::FractionalLaplacian;
            pot.family = PotentialFamily::PowerLog;
            break;
        case BuiltinPairing::FractionalIterLog:
            op.family = OperatorFamily::FractionalLaplacian;
            pot.family = PotentialFamily::PowerIterLog;
            break;
        case BuiltinPairing::RelativisticPower:
            op.family = OperatorFamily::RelativisticLaplacian;
            op.m = 1.0;
            pot.family = PotentialFamily::Power;
            break;
        case BuiltinPairing::RelativisticPowerLog:
            op.family = OperatorFamily::RelativisticLaplacian;
            op.m = 1.0;
            pot.family = PotentialFamily::PowerLog;
            break;
    }
    pot.theta = theta;
    return ModelSpec::make(op, pot, t);
}

WitnessSpec builtin_witness(const ModelSpec& spec) {
    const bool frac = spec.op.family == OperatorFamily::FractionalLaplacian;
    SigmaSpec sigma{frac ? SigmaKind::Half : SigmaKind::MinusOne, {}, {}};
    Profile eta;
    switch (spec.pot.family) {
        case PotentialFamily::PowerIterLog:
            eta = Profile::eta_r_logr_loglog2();
            break;
        case PotentialFamily::Power:
            eta = Profile::power_g(2.0);
            break;
        default:
            eta = Profile::eta_r_log2();
            break;
    }
    return WitnessSpec::make(spec, std::move(eta), std::move(sigma));
}

} // namespace intrsm
