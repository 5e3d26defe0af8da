#pragma once

#include "intrsm/profile.hpp"

#include <optional>

namespace intrsm {

struct DerivedConstants {
    double C6 = 1.0;      // doubling constant of g: g(r+1) <= C6 g(r)
    double K = 0.0;       // (4 C2 C6^2)^{-1}
    double K_tilde = 0.0; // 4 C2 C6^2
};

/// C6 as a supremum of g(r+1)/g(r) over [R0, r_max]. Exact value at the
/// activation radius for the built-in families (the ratio is decreasing);
/// log-grid scan with a stabilization check for custom profiles.
/// Throws GridError when the scan has not stabilized in the last decade.
DerivedConstants derive_constants(const PotentialSpec& pot, double r_max = 1e12);

/// Full model: operator + potential + time + the constants entering the
/// rate and envelope formulas. Immutable once built; safe to share.
struct ModelSpec {
    OperatorSpec op;
    PotentialSpec pot;
    double t = 1.0;

    double K = 0.0;            // upper-envelope exponential rate
    double K_tilde = 0.0;      // lower-envelope exponential rate
    double kappa = 1.0;        // threshold constant of the alpha inversion
    double kappa_tilde = 1.0;  // threshold constant of the beta/gamma inversions
    double lambda0 = 0.0;      // ground-state eigenvalue (envelope displays only)
    double rho = 2.0;          // envelope radius, > 1
    double T = 1.0;            // envelope validity horizon (q_envelope needs t >= T)
    double C = 1.0;            // upper tail prefactor C(t)
    double C_tilde = 1.0;      // lower tail prefactor C~(t)
    double C6 = 1.0;

    Profile f;  // jump-density profile
    Profile g;  // potential profile
    double f_one_radius = 1.0;  // radius where f = 1 (f1 kink)

    static ModelSpec make(OperatorSpec op, PotentialSpec pot, double t = 1.0);

    /// log of f1 = min(f, 1).
    double log_f1(double r) const;
    double g_value(double r) const { return g.value(r); }
};

enum class SigmaKind { Half, MinusOne, Custom };

/// Increasing continuous shift function with sigma(r) < r for r >= 1.
/// MinusOne is max(r/2, r-1): equals r-1 beyond r=2 and stays positive.
struct SigmaSpec {
    SigmaKind kind = SigmaKind::Half;
    std::function<double(double)> fn;
    std::string custom_name;

    double operator()(double r) const;
    std::string name() const;
};

/// Witness data for the lower, single-function tail bound: eta (increasing,
/// 1/eta integrable at infinity), sigma, and the limit parameter
/// b = lim ((d-1) log r + log eta(r)) / |log f(r)|.
struct WitnessSpec {
    Profile eta;
    SigmaSpec sigma;
    double b = 0.0;

    static WitnessSpec make(const ModelSpec& spec, Profile eta, SigmaSpec sigma);
};

/// The b-limit; analytic for built-in (f, eta) pairs, 3-point extrapolated
/// scan otherwise.
double estimate_b(const ModelSpec& spec, const Profile& eta);

/// Exponent omega of the inverse-profile scaling condition
/// limsup_{s->0} m(f^{-1}(c s^lambda)) / m(f^{-1}(s)) <= lambda^omega, m = g.
/// Known per family; nullopt when no finite omega exists (or unknown family).
std::optional<double> analytic_omega(const OperatorSpec& op, const PotentialSpec& pot);

} // namespace intrsm
