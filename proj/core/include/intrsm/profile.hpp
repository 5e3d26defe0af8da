#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>

namespace intrsm {

enum class ProfileKind {
    FractionalF,      // r^{-d-2a}
    RelativisticF,    // two-piece power times exp(-m^{1/(2a)} r)
    PowerG,           // r^theta beyond r=1, plateau 1
    PowerLogG,        // log^theta r beyond r=e, plateau 1
    PowerIterLogG,    // log^theta log r beyond r=e^e, plateau 1
    EtaRLog2,         // r log^2 r beyond r=e, plateau e
    EtaRLogRLogLog2,  // r log r log^2 log r beyond r=e^e, plateau e^{e+1}
    Custom,
};

enum class Direction { StrictlyDecreasing, StrictlyIncreasing };

struct ProfileParams {
    int d = 1;
    double a = 0.5;
    double m = 1.0;
    double theta = 1.0;
};

/// A strictly monotone, continuous radial profile with exact log-space
/// evaluation and guaranteed-bracketed inversion. Immutable after
/// construction; all methods are pure.
class Profile {
public:
    Profile() = default;

    static Profile fractional_f(int d, double a);
    static Profile relativistic_f(int d, double a, double m);
    static Profile power_g(double theta);
    static Profile power_log_g(double theta);
    static Profile power_iter_log_g(double theta);
    static Profile eta_r_log2();
    static Profile eta_r_logr_loglog2();
    static Profile custom(std::function<double(double)> log_eval, Direction dir,
                          double domain_lo, double domain_hi, std::string name,
                          double activation = 0.0,
                          std::function<double(double)> analytic_inverse_of_log = {});

    double value(double r) const;
    double log_value(double r) const;

    /// r with |value(r) - s| / s <= tol. Closed-form inverse when the family
    /// admits one, otherwise bracket expansion by factor 2 plus bisection
    /// (iteration cap 200). Throws RangeError / NoBracketError.
    double invert(double s, double tol = 1e-12) const;
    double invert_log(double log_s, double tol = 1e-12) const;

    ProfileKind kind() const { return kind_; }
    const ProfileParams& params() const { return params_; }
    Direction direction() const { return direction_; }
    double domain_lo() const { return domain_lo_; }
    double domain_hi() const { return domain_hi_; }
    /// Radius where the non-plateau formula starts (0 when there is none).
    double activation_radius() const { return activation_; }
    double plateau_log() const { return plateau_log_; }
    const std::string& name() const { return name_; }

private:
    ProfileKind kind_ = ProfileKind::Custom;
    ProfileParams params_{};
    Direction direction_ = Direction::StrictlyIncreasing;
    double domain_lo_ = 0.0;
    double domain_hi_ = std::numeric_limits<double>::infinity();
    double activation_ = 0.0;
    double plateau_log_ = -std::numeric_limits<double>::infinity();  // log value on plateau
    std::string name_;
    std::function<double(double)> custom_log_eval_;
    std::function<double(double)> custom_inverse_;

    void check_domain(double r) const;
};

enum class OperatorFamily { FractionalLaplacian, RelativisticLaplacian };

/// Kinetic term: fractional Laplacian -(-Delta)^a or its relativistic
/// counterpart -(-Delta + m^{1/a})^a + m.
struct OperatorSpec {
    OperatorFamily family = OperatorFamily::FractionalLaplacian;
    int d = 1;
    double a = 0.5;
    double m = 1.0;  // relativistic only

    Profile f_profile() const;
    /// Fourier symbol: |xi|^{2a} resp. (|xi|^2 + m^{1/a})^a - m.
    double symbol_radial(double xi_norm) const;
    double symbol(std::span<const double> xi) const;
    /// Exact jump density at radius r (with explicit constants).
    double levy_density(double r) const;
    double levy_density_log(double r) const;
    /// Leading constant: c_{d,a} (fractional) or the Bessel prefactor.
    double levy_constant() const;
    /// Left asymptotic inverse p(s) = -m^{-1/(2a)} log s of the relativistic
    /// profile; DomainError for s >= 1 or the fractional family.
    double asymptotic_inverse_p(double s) const;
    double asymptotic_inverse_p_log(double log_s) const;
    double m_inner() const;  // m^{1/(2a)}
};

/// Empirical two-sided comparability of the exact jump density against its
/// profile: (inf, sup) of nu(r)/f(r) over a log grid. The usable constant is
/// C1 = max(sup, 1/inf); for the fractional family both ends equal c_{d,a}.
std::pair<double, double> levy_comparability(const OperatorSpec& op, double r_lo = 1e-3,
                                             double r_hi = 1e3, int points = 120);

enum class PotentialFamily { Power, PowerLog, PowerIterLog, Custom };

struct PotentialSpec {
    PotentialFamily family = PotentialFamily::PowerLog;
    double theta = 0.5;
    double C2 = 1.0;   // two-sided comparability constant, >= 1
    double R0 = 0.0;   // 0 = profile activation radius
    std::function<double(double)> custom_log_g;  // Custom family only
    std::string custom_name;

    Profile g_profile() const;
    double activation() const;
};

} // namespace intrsm
