#pragma once

#include "intrsm/model.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace intrsm {

/// Monotone composites whose eventual-decrease radius r0(t) is certified on a
/// grid: G(r) = f^2 e^{K~ t g}, H(r) = f^2 r^{d-1} eta e^{K~ t g}, and
/// f1 e^{K t g} (the upper-envelope composite, certified together with
/// f1 <= e^{-K t g}).
enum class CompositeSelector { Gt, Ht, FExpKtg };

double log_G(const ModelSpec& spec, double r);
double log_H(const ModelSpec& spec, const WitnessSpec& w, double r);

/// Smallest grid-certified radius from which the selected composite is
/// strictly decreasing up to r_cap (20 points per decade, local refinement).
/// Throws NotEventuallyMonotone when no such radius exists below the cap.
double find_r0(const ModelSpec& spec, CompositeSelector sel,
               const WitnessSpec* w = nullptr, double r_cap = 1e12);

/// Inversion thresholds, profile inverses alpha/beta/gamma, rate functions
/// and tail bounds for one model. Everything runs on exact log-expressions;
/// u enters as log u so grids up to 10^60 and far beyond are exact.
class RateEvaluator {
public:
    explicit RateEvaluator(ModelSpec spec, std::optional<WitnessSpec> witness = {});

    const ModelSpec& spec() const { return spec_; }
    const std::optional<WitnessSpec>& witness() const { return witness_; }

    double r0_beta() const { return r0_beta_; }
    double r0_gamma() const;
    double log_u0_beta() const { return log_u0_beta_; }
    double log_u0_gamma() const;

    /// alpha(u): radius with f(r)^2 = kappa/u, u >= kappa.
    double alpha(double u) const;
    double alpha_logu(double log_u) const;
    /// beta(u): radius >= r0 with G(r) = kappa~/u, u >= u0.
    double beta(double u) const;
    double beta_logu(double log_u) const;
    /// gamma(u): radius >= r0 with H(r) = kappa~/u; HypothesisError if b >= 2.
    double gamma(double u) const;
    double gamma_logu(double log_u) const;

    double log_rate_upper(double r) const;    // log( g^2 e^{K t g} )
    double log_rate_lower(double r) const;    // log( g^2 e^{K~ t g} )
    double log_rate_witness(double r) const;  // lower + log eta - log(r - sigma)
    double rate_upper(double r) const;
    double rate_lower(double r) const;
    double rate_witness(double r) const;

    double log_tail_upper(double log_u) const;
    double log_tail_lower_sup(double log_u) const;
    double log_tail_witness(double log_u) const;

private:
    ModelSpec spec_;
    std::optional<WitnessSpec> witness_;
    double r0_beta_ = 0.0;
    double log_u0_beta_ = 0.0;
    double r0_gamma_ = 0.0;
    double log_u0_gamma_ = 0.0;
    bool witness_ok_ = false;

    double invert_decreasing(double target, double y_start,
                             const std::function<double(double)>& phi) const;
};

struct RatePoint {
    double u = 0.0;
    double log10_u = 0.0;
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    double log10_w = 0.0, log10_w_tilde = 0.0, log10_v = 0.0;
    double log10_upper = 0.0, log10_lower_sup = 0.0, log10_lower_witness = 0.0;
    std::string flags;  // semicolon-joined; empty = fully evaluated
};

struct RateTable {
    std::vector<RatePoint> rows;
    /// CSV: u,log_u,alpha,beta,gamma,w,w_tilde,v,upper,lower_sup,lower_witness,flags
    /// Bound/rate columns are log10 by default; linear=true emits raw values
    /// where representable (blank otherwise).
    void write_csv(std::ostream& os, bool linear = false) const;
    void write_json(std::ostream& os) const;
};

/// One RatePoint per log10(u); rows below thresholds are flagged, not fatal.
RateTable rate_table(const ModelSpec& spec, const std::optional<WitnessSpec>& witness,
                     std::span<const double> log10_u_grid, int threads = 1);

} // namespace intrsm
