#pragma once

#include "intrsm/model.hpp"

#include <string>

namespace intrsm {

/// The four built-in operator/potential pairings exercised by the tools:
/// fractional kinetic term with power-log or iterated-log potential,
/// relativistic kinetic term with power or power-log potential.
enum class BuiltinPairing {
    FractionalPowerLog,
    FractionalIterLog,
    RelativisticPower,
    RelativisticPowerLog,
};

std::string pairing_name(BuiltinPairing p);

/// Model with d=1, a=1/2 (m=1 for the relativistic pairings) and all
/// constants at their defaults; K, K~ derived from the potential.
ModelSpec builtin_model(BuiltinPairing p, double theta, double t);

/// The natural witness for each pairing: eta = r log^2 r (power-log),
/// r log r log^2 log r (iterated-log), r^2 (relativistic power); sigma = r/2
/// under the fractional profile, max(r/2, r-1) under the relativistic one.
WitnessSpec builtin_witness(const ModelSpec& spec);

} // namespace intrsm
