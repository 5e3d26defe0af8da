#pragma once

#include "intrsm/assumptions.hpp"
#include "intrsm/model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace intrsm {

enum class GammaMethod { Quadrature, MonteCarlo };

struct GammaOptions {
    double rel_tol = 1e-3;          // quadrature relative target
    std::uint64_t samples = 200000; // Monte Carlo sample count
    std::uint64_t seed = 1;
    int threads = 1;
};

struct GammaResult {
    double log_value = 0.0;  // -inf when the indicator vanishes
    double ci_halfwidth_log = 0.0;
    GammaMethod method = GammaMethod::Quadrature;
    std::uint64_t samples = 0;
};

/// Annulus kernel
///   Gamma(tau,x,y) = 1_{|x|,|y|>rho} / (f1(|x|) f1(|y|)) *
///     int_{rho-1<|z|<max(|x|,|y|)} f1(|x-z|) f1(|z-y|) e^{-tau g(|z|)} dz.
/// Quadrature path needs d <= 3 (DimensionError beyond); the Monte Carlo
/// path uses an importance mixture around x, y and the inner annulus and is
/// deterministic for a fixed (seed, samples), independent of threads.
GammaResult gamma_kernel(const ModelSpec& spec, double tau, std::span<const double> x,
                         std::span<const double> y, GammaMethod method,
                         const GammaOptions& opt = {});

struct Envelope {
    double log_lower = 0.0;
    double log_upper = 0.0;
};

/// Two-sided kernel envelope at time t >= T:
/// C^{-1} max(1, e^{lambda0 t} Gamma(K~t,x,y)) below,
/// C   max(1, e^{lambda0 t} Gamma(K t,x,y)) above.
Envelope q_envelope(const ModelSpec& spec, double t, std::span<const double> x,
                    std::span<const double> y, const GammaOptions& opt = {});

/// Ground-state envelope C10^{-/+1} f1(|x|)/g(|x|), in logs.
Envelope groundstate_envelope(const ModelSpec& spec, double abs_x, double C10 = 1.0);

struct PointPair {
    std::vector<double> x, y;
};

/// Empirical constants of the capped-profile convolution inequality
/// (int f1(|x-z|) f1(|z-y|) dz <= C8 f1(|x-y|)) and its pointwise variant
/// (f1(|x|) f1(|x-y|) <= C9 f1(|y|)). Quadrature path, d <= 3.
CheckReport check_DJP(const ModelSpec& spec, std::span<const PointPair> pairs = {});

} // namespace intrsm
