#pragma once

#include "intrsm/builtin.hpp"
#include "intrsm/model.hpp"

#include <optional>
#include <string>

namespace intrsm {

struct ParsedConfig {
    ModelSpec spec;
    WitnessSpec witness;      // from the config, or the pairing's natural one
    bool witness_from_config = false;
};

/// Strict JSON model config. Schema (unknown keys anywhere are errors):
///   operator:  family ("fractional"|"relativistic"), d, a, m (relativistic)
///   potential: family ("power"|"power_log"|"power_iter_log"), theta,
///              C2 (opt, >= 1), R0 (opt)
///   time:      t > 0 (opt, default 1)
///   constants: K, K_tilde, kappa, kappa_tilde, lambda0, rho, C, C_tilde, T
///              (all optional overrides)
///   witness:   eta ("r_log2"|"r_logr_loglog2"|"r_power2"),
///              sigma ("r_half"|"r_minus_1") (opt)
/// Throws ConfigError with a schema diagnostic.
ParsedConfig parse_model_config(const std::string& json_text);

/// Reads and parses a config file. ConfigError whose message starts with
/// "io:" when the file cannot be read.
ParsedConfig load_model_config(const std::string& path);

/// Canonical config text for a built-in pairing (round-trips through the
/// parser).
std::string builtin_config_json(BuiltinPairing p, double theta, double t);

} // namespace intrsm
