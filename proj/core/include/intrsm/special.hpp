#pragma once

namespace intrsm {

/// Modified Bessel function of the second kind via its integral
/// representation  K_mu(r) = (1/2)(r/2)^mu ∫_0^inf u^{-mu-1} e^{-u - r^2/(4u)} du,
/// evaluated after the substitution u = e^v (the transformed integrand is
/// log-concave with a single interior peak). Relative accuracy ~1e-10.
double bessel_k_integral(double mu, double r, double rel_tol = 1e-10);

/// log K_mu(r) from the same representation; usable far past double range.
double bessel_k_integral_log(double mu, double r, double rel_tol = 1e-10);

/// Closed form for half-integer orders: K_{1/2}(r) = sqrt(pi/(2r)) e^{-r},
/// then upward recurrence K_{mu+1} = K_{mu-1} + (2 mu / r) K_mu.
double bessel_k_half_integer(double mu, double r);

/// Dispatcher: half-integer closed form when mu is (numerically) a
/// half-integer, otherwise the integral representation.
double bessel_k(double mu, double r, double rel_tol = 1e-10);

/// Normalization constant of the isotropic fractional kinetic term,
/// c_{d,a} = 2^{2a} Gamma((d+2a)/2) / (pi^{d/2} |Gamma(-a)|).
double fractional_levy_constant(int d, double a);

/// Prefactor of the relativistic jump density,
/// a 2^{1+a-d/2} m^{(d+2a)/(4a)} / (pi^{d/2} Gamma(1-a)).
double relativistic_levy_prefactor(int d, double a, double m);

/// Surface area of the unit sphere S^{d-1}.
double sphere_surface(int d);

} // namespace intrsm
