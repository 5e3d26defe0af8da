#pragma once

#include <stdexcept>
#include <string>

namespace intrsm {

/// Argument outside the domain of a profile or special function.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Target value outside the range of the function being inverted.
struct RangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bracket expansion hit its iteration cap without enclosing a root.
struct NoBracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grid scan did not stabilize (supremum still moving in the last decade).
struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No radius below the cap from which the composite is certified decreasing.
struct NotEventuallyMonotone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A witness hypothesis (b < 2, integrability, sigma bound) does not hold.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation requires the L1/Orlicz regime and the spec is not in it.
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// (model, Young-function) pair has no built-in analytic threshold record.
struct NoMatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Orlicz modular diverges for every scale parameter.
struct NonIntegrable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rejection sampler acceptance rate collapsed.
struct RejectionStall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace intrsm
