#include "intrsm/special.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/quadrature.hpp"

#include <cmath>

namespace intrsm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// log-integrand after u = e^v:  psi(v) = -mu v - e^v - (r^2/4) e^{-v}
struct BesselIntegrand {
    double mu, q;  // q = r^2/4
    double operator()(double v) const { return -mu * v - std::exp(v) - q * std::exp(-v); }
};

} // namespace

double bessel_k_integral_log(double mu, double r, double rel_tol) {
    if (!(mu > 0.0) || !(r > 0.0)) throw DomainError("bessel_k: need mu > 0, r > 0");
    const double q = 0.25 * r * r;
    BesselIntegrand psi{mu, q};
    // stationary point: e^v = w*, w*^2 + mu w* - q = 0
    const double wstar = 0.5 * (-mu + std::sqrt(mu * mu + r * r));
    const double vstar = std::log(wstar);
    const double peak = psi(vstar);
    // expand around the peak until the integrand is negligible
    double lo = vstar, hi = vstar;
    const double drop = 45.0;  // e^{-45} ~ 3e-20
    double step = 0.5;
    while (psi(lo) > peak - drop) { lo -= step; step *= 1.5; }
    step = 0.5;
    while (psi(hi) > peak - drop) { hi += step; step *= 1.5; }

    auto f = [&](double v) { return std::exp(psi(v) - peak); };
    QuadratureResult integral = integrate(f, lo, hi, rel_tol * 0.5);
    if (!(integral.value > 0.0))
        throw ConvergenceError("bessel_k: normalized integral not positive");
    // K = (1/2)(r/2)^mu e^{peak} * integral
    return -std::log(2.0) + mu * std::log(0.5 * r) + peak + std::log(integral.value);
}

double bessel_k_integral(double mu, double r, double rel_tol) {
    return std::exp(bessel_k_integral_log(mu, r, rel_tol));
}

double bessel_k_half_integer(double mu, double r) {
    const double n_real = mu - 0.5;
    const long n = std::lround(n_real);
    if (n < 0 || std::abs(n_real - static_cast<double>(n)) > 1e-12)
        throw DomainError("bessel_k_half_integer: mu must be n + 1/2, n >= 0");
    const double k_half = std::sqrt(kPi / (2.0 * r)) * std::exp(-r);
    if (n == 0) return k_half;
    // K_{3/2} = K_{1/2} (1 + 1/r); recurrence upward from (1/2, 3/2)
    double km = k_half;
    double k = k_half * (1.0 + 1.0 / r);
    for (long j = 1; j < n; ++j) {
        const double nu = static_cast<double>(j) + 0.5;
        const double kp = km + (2.0 * nu / r) * k;
        km = k;
        k = kp;
    }
    return k;
}

double bessel_k(double mu, double r, double rel_tol) {
    const double n_real = mu - 0.5;
    const double n_round = std::round(n_real);
    if (n_round >= 0.0 && std::abs(n_real - n_round) < 1e-13)
        return bessel_k_half_integer(mu, r);
    return bessel_k_integral(mu, r, rel_tol);
}

double fractional_levy_constant(int d, double a) {
    if (d < 1 || !(a > 0.0 && a < 1.0))
        throw DomainError("fractional_levy_constant: need d >= 1, a in (0,1)");
    // |Gamma(-a)| = Gamma(1-a)/a for a in (0,1)
    const double abs_gamma_ma = std::tgamma(1.0 - a) / a;
    return std::pow(2.0, 2.0 * a) * std::tgamma(0.5 * (d + 2.0 * a)) /
           (std::pow(kPi, 0.5 * d) * abs_gamma_ma);
}

double relativistic_levy_prefactor(int d, double a, double m) {
    if (d < 1 || !(a > 0.0 && a < 1.0) || !(m > 0.0))
        throw DomainError("relativistic_levy_prefactor: need d >= 1, a in (0,1), m > 0");
    return a * std::pow(2.0, 1.0 + a - 0.5 * d) * std::pow(m, (d + 2.0 * a) / (4.0 * a)) /
           (std::pow(kPi, 0.5 * d) * std::tgamma(1.0 - a));
}

double sphere_surface(int d) {
    if (d < 1) throw DomainError("sphere_surface: d >= 1");
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

} // namespace intrsm
