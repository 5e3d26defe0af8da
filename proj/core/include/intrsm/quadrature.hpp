#pragma once

#include <functional>
#include <vector>

namespace intrsm {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
};

/// Single Gauss-7 / Kronrod-15 panel on [a,b].
QuadratureResult gk15_panel(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive GK15 on a finite interval. Splits the worst panel until
/// the summed error estimate meets max(abs_tol, rel_tol*|value|).
/// Throws ConvergenceError when the panel budget is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, double abs_tol = 0.0,
                           int max_panels = 4000);

/// Like integrate(), but the interval is pre-split at the given interior
/// points (kinks of f1-type integrands).
QuadratureResult integrate_split(const std::function<double(double)>& f, double a, double b,
                                 const std::vector<double>& interior_splits,
                                 double rel_tol = 1e-10, double abs_tol = 0.0,
                                 int max_panels = 4000);

/// Integral over [a, infinity) by geometric panels [a*2^k, a*2^{k+1}] (a > 0).
/// Stops when the running tail panel is negligible against the total.
/// Throws ConvergenceError when panels do not decay within the cap, which is
/// how a divergent heavy tail shows up.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       double rel_tol = 1e-10, int max_doublings = 2000);

/// log of the integral of exp(log_f(x)) over [a,b], accumulated entirely in
/// log space (log-sum-exp over composite GK15 nodes, refined by doubling).
/// Safe for integrands whose magnitude far exceeds double range.
double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     double log_abs_tol = 1e-8, int max_refine = 12);

/// log(exp(la) + exp(lb)) without overflow.
double log_add(double la, double lb);

} // namespace intrsm
