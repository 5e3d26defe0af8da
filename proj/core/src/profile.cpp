#include "intrsm/profile.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/special.hpp"

#include <cmath>

namespace intrsm {

namespace {
const double kE = std::exp(1.0);
const double kEE = std::exp(kE);
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

Profile Profile::fractional_f(int d, double a) {
    if (d < 1 || !(a > 0.0 && a < 1.0))
        throw DomainError("fractional_f: need d >= 1, a in (0,1)");
    Profile p;
    p.kind_ = ProfileKind::FractionalF;
    p.params_ = {d, a, 0.0, 0.0};
    p.direction_ = Direction::StrictlyDecreasing;
    p.domain_lo_ = 0.0;  // open at 0
    p.name_ = "fractional_f";
    return p;
}

Profile Profile::relativistic_f(int d, double a, double m) {
    if (d < 1 || !(a > 0.0 && a < 1.0) || !(m > 0.0))
        throw DomainError("relativistic_f: need d >= 1, a in (0,1), m > 0");
    Profile p;
    p.kind_ = ProfileKind::RelativisticF;
    p.params_ = {d, a, m, 0.0};
    p.direction_ = Direction::StrictlyDecreasing;
    p.domain_lo_ = 0.0;
    p.name_ = "relativistic_f";
    return p;
}

Profile Profile::power_g(double theta) {
    if (!(theta > 0.0)) throw DomainError("power_g: theta > 0");
    Profile p;
    p.kind_ = ProfileKind::PowerG;
    p.params_.theta = theta;
    p.direction_ = Direction::StrictlyIncreasing;
    p.activation_ = 1.0;
    p.plateau_log_ = 0.0;
    p.name_ = "power_g";
    return p;
}

Profile Profile::power_log_g(double theta) {
    if (!(theta > 0.0)) throw DomainError("power_log_g: theta > 0");
    Profile p;
    p.kind_ = ProfileKind::PowerLogG;
    p.params_.theta = theta;
    p.direction_ = Direction::StrictlyIncreasing;
    p.activation_ = kE;
    p.plateau_log_ = 0.0;  // log^theta(e) = 1
    p.name_ = "power_log_g";
    return p;
}

Profile Profile::power_iter_log_g(double theta) {
    if (!(theta > 0.0)) throw DomainError("power_iter_log_g: theta > 0");
    Profile p;
    p.kind_ = ProfileKind::PowerIterLogG;
    p.params_.theta = theta;
    p.direction_ = Direction::StrictlyIncreasing;
    p.activation_ = kEE;
    p.plateau_log_ = 0.0;
    p.name_ = "power_iter_log_g";
    return p;
}

Profile Profile::eta_r_log2() {
    Profile p;
    p.kind_ = ProfileKind::EtaRLog2;
    p.direction_ = Direction::StrictlyIncreasing;
    p.activation_ = kE;
    p.plateau_log_ = 1.0;  // e * log^2(e) = e
    p.name_ = "eta_r_log2";
    return p;
}

Profile Profile::eta_r_logr_loglog2() {
    Profile p;
    p.kind_ = ProfileKind::EtaRLogRLogLog2;
    p.direction_ = Direction::StrictlyIncreasing;
    p.activation_ = kEE;
    p.plateau_log_ = kE + 1.0;  // e^e * e * 1
    p.name_ = "eta_r_logr_loglog2";
    return p;
}

Profile Profile::custom(std::function<double(double)> log_eval, Direction dir,
                        double domain_lo, double domain_hi, std::string name,
                        double activation, std::function<double(double)> inverse) {
    if (!log_eval) throw DomainError("custom profile: log_eval required");
    Profile p;
    p.kind_ = ProfileKind::Custom;
    p.direction_ = dir;
    p.domain_lo_ = domain_lo;
    p.domain_hi_ = domain_hi;
    p.activation_ = activation;
    p.name_ = std::move(name);
    p.custom_log_eval_ = std::move(log_eval);
    p.custom_inverse_ = std::move(inverse);
    if (activation > domain_lo) p.plateau_log_ = p.custom_log_eval_(activation);
    return p;
}

void Profile::check_domain(double r) const {
    const bool open_at_zero =
        kind_ == ProfileKind::FractionalF || kind_ == ProfileKind::RelativisticF;
    if (std::isnan(r) || r < domain_lo_ || r > domain_hi_ || (open_at_zero && r <= 0.0))
        throw DomainError(name_ + ": radius " + std::to_string(r) + " outside domain");
}

double Profile::log_value(double r) const {
    check_domain(r);
    const double th = params_.theta;
    switch (kind_) {
        case ProfileKind::FractionalF:
            return -(params_.d + 2.0 * params_.a) * std::log(r);
        case ProfileKind::RelativisticF: {
            const double mi = std::pow(params_.m, 1.0 / (2.0 * params_.a));
            const double c = (r <= 1.0) ? (params_.d + 2.0 * params_.a)
                                        : 0.5 * (params_.d + 2.0 * params_.a + 1.0);
            return -c * std::log(r) - mi * r;
        }
        case ProfileKind::PowerG:
            return r <= 1.0 ? 0.0 : th * std::log(r);
        case ProfileKind::PowerLogG:
            return r <= kE ? 0.0 : th * std::log(std::log(r));
        case ProfileKind::PowerIterLogG:
            return r <= kEE ? 0.0 : th * std::log(std::log(std::log(r)));
        case ProfileKind::EtaRLog2: {
            if (r <= kE) return plateau_log_;
            const double y = std::log(r);
            return y + 2.0 * std::log(y);
        }
        case ProfileKind::EtaRLogRLogLog2: {
            if (r <= kEE) return plateau_log_;
            const double y = std::log(r);
            return y + std::log(y) + 2.0 * std::log(std::log(y));
        }
        case ProfileKind::Custom:
            return custom_log_eval_(r);
    }
    throw DomainError("unreachable profile kind");
}

double Profile::value(double r) const { return std::exp(log_value(r)); }

double Profile::invert_log(double log_s, double tol) const {
    const double th = params_.theta;
    // closed-form fast paths
    switch (kind_) {
        case ProfileKind::FractionalF:
            return std::exp(-log_s / (params_.d + 2.0 * params_.a));
        case ProfileKind::PowerG:
            if (log_s < plateau_log_ - 1e-15) throw RangeError("power_g: s below plateau");
            return std::exp(std::max(0.0, log_s) / th);
        case ProfileKind::PowerLogG: {
            if (log_s < plateau_log_ - 1e-15) throw RangeError("power_log_g: s below plateau");
            return std::exp(std::exp(std::max(0.0, log_s) / th));
        }
        case ProfileKind::PowerIterLogG: {
            if (log_s < plateau_log_ - 1e-15)
                throw RangeError("power_iter_log_g: s below plateau");
            return std::exp(std::exp(std::exp(std::max(0.0, log_s) / th)));
        }
        default:
            break;
    }
    if (kind_ == ProfileKind::Custom && custom_inverse_) return custom_inverse_(log_s);

    if (plateau_log_ > -kInf && log_s < plateau_log_ - 1e-15)
        throw RangeError(name_ + ": target below plateau value");

    // generic path: bracket in y = log r from an initial guess, expanding by
    // factor 2 in step size, then bisection; cap 200 per phase
    const bool incr = direction_ == Direction::StrictlyIncreasing;
    auto residual = [&](double y) { return log_value(std::exp(y)) - log_s; };

    double y0 = activation_ > 0.0 ? std::log(activation_) : 0.0;
    if (domain_hi_ < kInf) y0 = std::min(y0, std::log(domain_hi_) - 1e-9);
    double r0 = residual(y0);
    if (r0 == 0.0) return std::exp(y0);
    // move in the direction that brings the residual toward zero
    const bool go_up = (r0 < 0.0) == incr;
    double step = 0.5;
    double ylo = y0, yhi = y0;
    double y = y0, ry = r0;
    bool bracketed = false;
    for (int i = 0; i < 200; ++i) {
        double ynext = go_up ? y + step : y - step;
        if (domain_hi_ < kInf) ynext = std::min(ynext, std::log(domain_hi_));
        if (domain_lo_ > 0.0) ynext = std::max(ynext, std::log(domain_lo_) + 1e-12);
        const double rn = residual(ynext);
        if ((rn <= 0.0) != (ry <= 0.0)) {
            ylo = std::min(y, ynext);
            yhi = std::max(y, ynext);
            bracketed = true;
            break;
        }
        if (ynext == y) break;  // pinned at a domain edge without sign change
        y = ynext;
        ry = rn;
        step *= 2.0;
    }
    if (!bracketed) throw NoBracketError(name_ + ": bracketing failed within cap");

    double rlo = residual(ylo);
    for (int i = 0; i < 200; ++i) {
        const double ym = 0.5 * (ylo + yhi);
        const double rm = residual(ym);
        if (std::abs(rm) <= tol || (yhi - ylo) < 4e-16 * std::max(1.0, std::abs(ym)))
            return std::exp(ym);
        if ((rm <= 0.0) == (rlo <= 0.0)) {
            ylo = ym;
            rlo = rm;
        } else {
            yhi = ym;
        }
    }
    return std::exp(0.5 * (ylo + yhi));
}

double Profile::invert(double s, double tol) const {
    if (!(s > 0.0)) throw RangeError(name_ + ": inversion target must be positive");
    return invert_log(std::log(s), tol);
}

// ---- OperatorSpec -----------------------------------------------------------

Profile OperatorSpec::f_profile() const {
    return family == OperatorFamily::FractionalLaplacian
               ? Profile::fractional_f(d, a)
               : Profile::relativistic_f(d, a, m);
}

double OperatorSpec::m_inner() const { return std::pow(m, 1.0 / (2.0 * a)); }

double OperatorSpec::symbol_radial(double xi_norm) const {
    const double x = std::abs(xi_norm);
    if (family == OperatorFamily::FractionalLaplacian) return std::pow(x, 2.0 * a);
    const double ma = std::pow(m, 1.0 / a);
    return std::pow(x * x + ma, a) - m;
}

double OperatorSpec::symbol(std::span<const double> xi) const {
    double s2 = 0.0;
    for (double c : xi) s2 += c * c;
    return symbol_radial(std::sqrt(s2));
}

double OperatorSpec::levy_constant() const {
    return family == OperatorFamily::FractionalLaplacian
               ? fractional_levy_constant(d, a)
               : relativistic_levy_prefactor(d, a, m);
}

double OperatorSpec::levy_density_log(double r) const {
    if (!(r > 0.0)) throw DomainError("levy_density: r > 0");
    if (family == OperatorFamily::FractionalLaplacian)
        return std::log(fractional_levy_constant(d, a)) - (d + 2.0 * a) * std::log(r);
    const double mu = 0.5 * (d + 2.0 * a);
    const double z = m_inner() * r;
    return std::log(relativistic_levy_prefactor(d, a, m)) +
           bessel_k_integral_log(mu, z) - mu * std::log(r);
}

double OperatorSpec::levy_density(double r) const { return std::exp(levy_density_log(r)); }

double OperatorSpec::asymptotic_inverse_p(double s) const {
    if (!(s > 0.0)) throw DomainError("asymptotic_inverse_p: need 0 < s < 1");
    return asymptotic_inverse_p_log(std::log(s));
}

double OperatorSpec::asymptotic_inverse_p_log(double log_s) const {
    if (family != OperatorFamily::RelativisticLaplacian)
        throw DomainError("asymptotic_inverse_p: relativistic family only");
    if (!(log_s < 0.0)) throw DomainError("asymptotic_inverse_p: need 0 < s < 1");
    return -log_s / m_inner();
}

std::pair<double, double> levy_comparability(const OperatorSpec& op, double r_lo, double r_hi,
                                             int points) {
    const Profile f = op.f_profile();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i <= points; ++i) {
        const double r = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / points);
        const double ratio = std::exp(op.levy_density_log(r) - f.log_value(r));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

// ---- PotentialSpec ----------------------------------------------------------

Profile PotentialSpec::g_profile() const {
    switch (family) {
        case PotentialFamily::Power:
            return Profile::power_g(theta);
        case PotentialFamily::PowerLog:
            return Profile::power_log_g(theta);
        case PotentialFamily::PowerIterLog:
            return Profile::power_iter_log_g(theta);
        case PotentialFamily::Custom:
            if (!custom_log_g) throw DomainError("custom potential: log g callback required");
            return Profile::custom(custom_log_g, Direction::StrictlyIncreasing, 0.0,
                                   std::numeric_limits<double>::infinity(),
                                   custom_name.empty() ? "custom_g" : custom_name, R0);
    }
    throw DomainError("unreachable potential family");
}

double PotentialSpec::activation() const {
    if (R0 > 0.0) return R0;
    return g_profile().activation_radius();
}

} // namespace intrsm
