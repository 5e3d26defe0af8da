#include "intrsm/config.hpp"
#include "intrsm/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace intrsm {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError("schema: '" + where + "' must be an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw ConfigError("schema: unknown key '" + where + "." + key + "'");
}

double need_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("schema: missing key '" + where + "." + key + "'");
    if (!obj[key].is_number())
        throw ConfigError("schema: '" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError("schema: '" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

std::string need_string(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("schema: missing key '" + where + "." + key + "'");
    if (!obj[key].is_string())
        throw ConfigError("schema: '" + where + "." + key + "' must be a string");
    return obj[key].get<std::string>();
}

} // namespace

ParsedConfig parse_model_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("schema: invalid JSON: ") + e.what());
    }
    check_keys(root, "", {"operator", "potential", "time", "constants", "witness"});
    if (!root.contains("operator") || !root.contains("potential"))
        throw ConfigError("schema: 'operator' and 'potential' sections are required");

    const json& jop = root["operator"];
    check_keys(jop, "operator", {"family", "d", "a", "m"});
    OperatorSpec op;
    const std::string fam = need_string(jop, "operator", "family");
    if (fam == "fractional")
        op.family = OperatorFamily::FractionalLaplacian;
    else if (fam == "relativistic")
        op.family = OperatorFamily::RelativisticLaplacian;
    else
        throw ConfigError("schema: operator.family must be 'fractional' or 'relativistic'");
    op.d = static_cast<int>(need_number(jop, "operator", "d"));
    op.a = need_number(jop, "operator", "a");
    if (op.d < 1) throw ConfigError("schema: operator.d must be a positive integer");
    if (!(op.a > 0.0 && op.a < 1.0)) throw ConfigError("schema: operator.a must lie in (0,1)");
    if (op.family == OperatorFamily::RelativisticLaplacian) {
        op.m = need_number(jop, "operator", "m");
        if (!(op.m > 0.0)) throw ConfigError("schema: operator.m must be positive");
    } else if (jop.contains("m")) {
        throw ConfigError("schema: operator.m applies to the relativistic family only");
    }

    const json& jpot = root["potential"];
    check_keys(jpot, "potential", {"family", "theta", "C2", "R0"});
    PotentialSpec pot;
    const std::string pfam = need_string(jpot, "potential", "family");
    if (pfam == "power")
        pot.family = PotentialFamily::Power;
    else if (pfam == "power_log")
        pot.family = PotentialFamily::PowerLog;
    else if (pfam == "power_iter_log")
        pot.family = PotentialFamily::PowerIterLog;
    else
        throw ConfigError(
            "schema: potential.family must be 'power', 'power_log' or 'power_iter_log'");
    pot.theta = need_number(jpot, "potential", "theta");
    if (!(pot.theta > 0.0)) throw ConfigError("schema: potential.theta must be positive");
    pot.C2 = opt_number(jpot, "potential", "C2", 1.0);
    if (!(pot.C2 >= 1.0)) throw ConfigError("schema: potential.C2 must be >= 1");
    pot.R0 = opt_number(jpot, "potential", "R0", 0.0);

    double t = 1.0;
    if (root.contains("time")) {
        if (!root["time"].is_number()) throw ConfigError("schema: 'time' must be a number");
        t = root["time"].get<double>();
        if (!(t > 0.0)) throw ConfigError("schema: 'time' must be positive");
    }

    ParsedConfig out;
    out.spec = ModelSpec::make(op, pot, t);

    if (root.contains("constants")) {
        const json& jc = root["constants"];
        check_keys(jc, "constants",
                   {"K", "K_tilde", "kappa", "kappa_tilde", "lambda0", "rho", "C", "C_tilde", "T"});
        out.spec.K = opt_number(jc, "constants", "K", out.spec.K);
        out.spec.K_tilde = opt_number(jc, "constants", "K_tilde", out.spec.K_tilde);
        out.spec.kappa = opt_number(jc, "constants", "kappa", out.spec.kappa);
        out.spec.kappa_tilde = opt_number(jc, "constants", "kappa_tilde", out.spec.kappa_tilde);
        out.spec.lambda0 = opt_number(jc, "constants", "lambda0", out.spec.lambda0);
        out.spec.rho = opt_number(jc, "constants", "rho", out.spec.rho);
        out.spec.C = opt_number(jc, "constants", "C", out.spec.C);
        out.spec.C_tilde = opt_number(jc, "constants", "C_tilde", out.spec.C_tilde);
        out.spec.T = opt_number(jc, "constants", "T", out.spec.T);
        if (!(out.spec.rho > 1.0)) throw ConfigError("schema: constants.rho must exceed 1");
        for (double v : {out.spec.K, out.spec.K_tilde, out.spec.kappa, out.spec.kappa_tilde})
            if (!(v > 0.0)) throw ConfigError("schema: rate constants must be positive");
    }

    if (root.contains("witness")) {
        const json& jw = root["witness"];
        check_keys(jw, "witness", {"eta", "sigma"});
        Profile eta;
        const std::string en = need_string(jw, "witness", "eta");
        if (en == "r_log2")
            eta = Profile::eta_r_log2();
        else if (en == "r_logr_loglog2")
            eta = Profile::eta_r_logr_loglog2();
        else if (en == "r_power2")
            eta = Profile::power_g(2.0);
        else
            throw ConfigError("schema: witness.eta must be 'r_log2', 'r_logr_loglog2' or "
                              "'r_power2'");
        SigmaSpec sigma;
        const std::string sn = need_string(jw, "witness", "sigma");
        if (sn == "r_half")
            sigma.kind = SigmaKind::Half;
        else if (sn == "r_minus_1")
            sigma.kind = SigmaKind::MinusOne;
        else
            throw ConfigError("schema: witness.sigma must be 'r_half' or 'r_minus_1'");
        out.witness = WitnessSpec::make(out.spec, std::move(eta), sigma);
        out.witness_from_config = true;
    } else {
        out.witness = builtin_witness(out.spec);
    }
    return out;
}

ParsedConfig load_model_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("io: cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_config(ss.str());
}

std::string builtin_config_json(BuiltinPairing p, double theta, double t) {
    json root;
    switch (p) {
        case BuiltinPairing::FractionalPowerLog:
            root["operator"] = {{"family", "fractional"}, {"d", 1}, {"a", 0.5}};
            root["potential"] = {{"family", "power_log"}, {"theta", theta}};
            break;
        case BuiltinPairing::FractionalIterLog:
            root["operator"] = {{"family", "fractional"}, {"d", 1}, {"a", 0.5}};
            root["potential"] = {{"family", "power_iter_log"}, {"theta", theta}};
            break;
        case BuiltinPairing::RelativisticPower:
            root["operator"] = {{"family", "relativistic"}, {"d", 1}, {"a", 0.5}, {"m", 1.0}};
            root["potential"] = {{"family", "power"}, {"theta", theta}};
            break;
        case BuiltinPairing::RelativisticPowerLog:
            root["operator"] = {{"family", "relativistic"}, {"d", 1}, {"a", 0.5}, {"m", 1.0}};
            root["potential"] = {{"family", "power_log"}, {"theta", theta}};
            break;
    }
    root["time"] = t;
    return root.dump(2) + "\n";
}

} // namespace intrsm
