// intrsm: smoothing-rate toolkit for ground-state-transformed semigroups of
// non-local Schrodinger operators. Subcommands: classify, rate, orlicz,
// gamma, verify, mc, examples.

#include <CLI11.hpp>
#include <json.hpp>

#include "intrsm/assumptions.hpp"
#include "intrsm/builtin.hpp"
#include "intrsm/config.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/kernelbound.hpp"
#include "intrsm/montecarlo.hpp"
#include "intrsm/orlicz.hpp"
#include "intrsm/rates.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace intrsm;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kLn10 = 2.30258509299404568402;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    std::uint64_t seed = 1;
    int threads = 1;
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Manifest {
    std::string subcommand;
    std::string config_path;
    std::string config_hash;  // hash of the config file content (or "none")
    std::string flags;        // canonical flag serialization
    std::uint64_t seed = 1;
    int threads = 1;
    std::vector<std::string> outputs;

    std::string hash() const {
        // deterministic identity: everything except timestamps and outputs
        return hex64(fnv1a(subcommand + "|" + config_hash + "|" + flags + "|" +
                           std::to_string(seed) + "|" + kVersion));
    }

    void write(const fs::path& dir) const {
        json j;
        j["subcommand"] = subcommand;
        j["config_path"] = config_path;
        j["config_hash"] = config_hash;
        j["flags"] = flags;
        j["seed"] = seed;
        j["threads"] = threads;
        j["tool_version"] = kVersion;
        j["manifest_hash"] = hash();
        j["outputs"] = outputs;
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timestamp_unix"] =
            std::chrono::duration_cast<std::chrono::seconds>(now).count();
        std::ofstream out(dir / "manifest.json");
        out << j.dump(2) << "\n";
    }
};

std::string hash_config_file(const std::string& path) {
    if (path.empty()) return "none";
    std::ifstream in(path);
    if (!in) throw ConfigError("io: cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return hex64(fnv1a(ss.str()));
}

void write_text(Manifest& man, const fs::path& dir, const std::string& name,
                const std::string& content) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    man.outputs.push_back((dir / name).string());
}

ParsedConfig require_config(const GlobalOpts& g) {
    if (g.config_path.empty())
        throw ConfigError("schema: --config PATH is required for this subcommand");
    return load_model_config(g.config_path);
}

// declarative plot description next to a CSV curve; tools/render_plots.py
// turns these into figures
void write_plotspec(Manifest& man, const fs::path& dir, const std::string& name,
                    const std::string& data_file, const std::string& x,
                    const std::vector<std::string>& ys, const std::string& xscale,
                    const std::string& yscale, const std::string& title) {
    json j;
    j["manifest"] = man.hash();
    j["data"] = data_file;
    j["x"] = x;
    j["y"] = ys;
    j["xscale"] = xscale;
    j["yscale"] = yscale;
    j["title"] = title;
    write_text(man, dir, name, j.dump(2) + "\n");
}

json report_json(const CheckReport& r) { return json::parse(r.to_json()); }

std::string fmtg(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// closed-form large-u description of g(alpha(u)) per pairing
double border_rate_closed_form(const ModelSpec& spec, double log_u) {
    const bool frac = spec.op.family == OperatorFamily::FractionalLaplacian;
    const double th = spec.pot.theta;
    if (frac && spec.pot.family == PotentialFamily::PowerLog)
        return std::pow(log_u / (2.0 * (spec.op.d + 2.0 * spec.op.a)), th);
    if (frac && spec.pot.family == PotentialFamily::PowerIterLog)
        return std::pow(std::log(log_u), th);
    if (!frac && spec.pot.family == PotentialFamily::Power)
        return std::pow(log_u / (2.0 * spec.op.m_inner()), th);
    if (!frac && spec.pot.family == PotentialFamily::PowerLog)
        return std::pow(std::log(log_u), th);
    throw NoMatchError("no closed-form border rate for this pairing");
}

// ---- subcommand bodies --------------------------------------------------------

int cmd_classify(const GlobalOpts& g, bool skip_a1) {
    auto cfg = require_config(g);
    const auto rr = classify_regime(cfg.spec);
    std::vector<CheckReport> reports = rr.reports;
    reports.push_back(check_A3(cfg.spec));
    reports.push_back(check_A2_profile(cfg.spec));
    reports.push_back(estimate_omega(cfg.spec));
    if (!skip_a1) reports.push_back(check_A1(cfg.spec));

    json arr = json::array();
    bool hard_fail = false, inconclusive = false;
    for (const auto& r : reports) {
        arr.push_back(report_json(r));
        const bool standing = r.condition == Condition::A1 ||
                              r.condition == Condition::A2profile ||
                              r.condition == Condition::A3;
        if (standing && r.verdict == Verdict::Fail) hard_fail = true;
        if (standing && r.verdict == Verdict::Inconclusive) inconclusive = true;
    }
    std::cout << regime_name(rr.regime) << "\n";
    std::cout << arr.dump(2) << "\n";

    Manifest man{"classify", g.config_path, hash_config_file(g.config_path),
                 std::string("skip_a1=") + (skip_a1 ? "1" : "0"), g.seed, g.threads, {}};
    fs::create_directories(g.out_dir);
    json out;
    out["regime"] = regime_name(rr.regime);
    out["reports"] = arr;
    const auto [c1_lo, c1_hi] = levy_comparability(cfg.spec.op);
    out["levy_comparability"] = {{"inf", c1_lo},
                                 {"sup", c1_hi},
                                 {"C1", std::max(c1_hi, 1.0 / c1_lo)}};
    out["manifest"] = man.hash();
    write_text(man, g.out_dir, "classify.json", out.dump(2) + "\n");
    man.write(g.out_dir);

    if (hard_fail) return 2;
    if (rr.regime == Regime::Borderline || inconclusive) return 3;
    return 0;
}

int cmd_rate(const GlobalOpts& g, const std::string& u_decades, bool linear) {
    auto cfg = require_config(g);
    double lo = 10, hi = 60, step = 10;
    if (std::sscanf(u_decades.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
        throw ConfigError("schema: --u-decades expects LO:HI:STEP");
    std::vector<double> grid;
    for (double v = lo; v <= hi + 1e-9; v += step) grid.push_back(v);

    const auto table = rate_table(cfg.spec, cfg.witness, grid, g.threads);

    Manifest man{"rate", g.config_path, hash_config_file(g.config_path),
                 "u_decades=" + u_decades + ";linear=" + (linear ? "1" : "0"), g.seed,
                 g.threads, {}};
    std::ostringstream csv;
    csv << "# manifest " << man.hash() << "\n";
    table.write_csv(csv, linear);
    std::ostringstream js;
    js << "{\"manifest\": \"" << man.hash() << "\", \"rows\": ";
    table.write_json(js);
    js << "}\n";
    if (g.format == "json")
        write_text(man, g.out_dir, "rate.json", js.str());
    else
        write_text(man, g.out_dir, "rate.csv", csv.str());
    write_plotspec(man, g.out_dir, "rate.plotspec.json", "rate.csv", "log_u",
                   {"w", "w_tilde", "v", "upper", "lower_sup", "lower_witness"}, "linear",
                   "linear", "composed rates and tail bounds (log10)");
    man.write(g.out_dir);
    std::cout << "rate table: " << table.rows.size() << " rows -> " << g.out_dir << "\n";
    return 0;
}

int cmd_orlicz(const GlobalOpts& g, const std::string& phi_arg, double t_override) {
    auto cfg = require_config(g);
    if (t_override > 0.0) cfg = [&] {
        auto c2 = cfg;
        c2.spec = ModelSpec::make(cfg.spec.op, cfg.spec.pot, t_override);
        return c2;
    }();

    // --phi family,args: "power,q" | "explog,c,theta" | "exploglog,c,theta"
    std::vector<std::string> parts;
    std::stringstream ss(phi_arg);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    YoungFunction phi = YoungFunction::power(1.0);
    if (parts.size() == 2 && parts[0] == "power")
        phi = YoungFunction::power(std::stod(parts[1]));
    else if (parts.size() == 3 && parts[0] == "explog")
        phi = YoungFunction::exp_log(std::stod(parts[1]), std::stod(parts[2]));
    else if (parts.size() == 3 && parts[0] == "exploglog")
        phi = YoungFunction::exp_log_log(std::stod(parts[1]), std::stod(parts[2]));
    else
        throw ConfigError("schema: --phi expects 'power,q' or 'explog,c,theta' or "
                          "'exploglog,c,theta'");

    const auto cls = classify_orlicz(cfg.spec, cfg.witness, phi);

    json out;
    out["phi"] = phi_arg;
    out["criterion_a"] = json::parse(cls.a.to_json());
    out["criterion_b"] = json::parse(cls.b.to_json());
    Manifest man{"orlicz", g.config_path, hash_config_file(g.config_path),
                 "phi=" + phi_arg + ";t=" + fmtg(t_override), g.seed, g.threads, {}};
    out["manifest"] = man.hash();
    std::cout << out.dump(2) << "\n";

    // human-readable threshold comparison
    try {
        const auto rec = analytic_thresholds(cfg.spec, phi);
        std::cout << "threshold comparison (" << rec.display << ")\n"
                  << "  c        = " << fmtg(phi.c()) << "\n"
                  << "  success  = " << fmtg(rec.success_c) << "  ("
                  << (phi.c() < rec.success_c ? "below: maps into" : "not below") << ")\n"
                  << "  failure  = " << fmtg(rec.failure_c) << "  ("
                  << (phi.c() > rec.failure_c ? "above: not a subset" : "not above") << ")\n";
    } catch (const NoMatchError& e) {
        std::cout << "no analytic thresholds: " << e.what() << "\n";
    }
    write_text(man, g.out_dir, "orlicz.json", out.dump(2) + "\n");
    man.write(g.out_dir);
    const bool decided = cls.a.verdict == OrliczOutcome::MapsInto ||
                         cls.b.verdict == OrliczOutcome::NotSubset;
    return decided ? 0 : 3;
}

int cmd_gamma(const GlobalOpts& g, double tau, const std::string& xs, const std::string& ys,
              const std::string& method, std::uint64_t samples) {
    auto cfg = require_config(g);
    auto parse_vec = [](const std::string& s) {
        std::vector<double> v;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
        return v;
    };
    const auto x = parse_vec(xs), y = parse_vec(ys);
    GammaOptions opt;
    opt.samples = samples;
    opt.seed = g.seed;
    opt.threads = g.threads;
    const auto res =
        gamma_kernel(cfg.spec, tau, x, y,
                     method == "mc" ? GammaMethod::MonteCarlo : GammaMethod::Quadrature, opt);
    Manifest man{"gamma", g.config_path, hash_config_file(g.config_path),
                 "tau=" + fmtg(tau) + ";x=" + xs + ";y=" + ys + ";method=" + method +
                     ";samples=" + std::to_string(samples),
                 g.seed, g.threads, {}};
    json out;
    // JSON has no infinities; a vanished indicator comes back as a string
    if (std::isfinite(res.log_value))
        out["value_log"] = res.log_value;
    else
        out["value_log"] = "-inf";
    if (std::isfinite(res.ci_halfwidth_log))
        out["ci_halfwidth_log"] = res.ci_halfwidth_log;
    else
        out["ci_halfwidth_log"] = "inf";
    out["method"] = method == "mc" ? "MonteCarlo" : "Quadrature";
    out["manifest"] = man.hash();
    std::cout << out.dump(2) << "\n";
    fs::create_directories(g.out_dir);
    write_text(man, g.out_dir, "gamma.json", out.dump(2) + "\n");
    man.write(g.out_dir);
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& lemma) {
    auto cfg = require_config(g);
    const auto& spec = cfg.spec;
    Manifest man{"verify", g.config_path, hash_config_file(g.config_path), "lemma=" + lemma,
                 g.seed, g.threads, {}};
    std::ostringstream csv;
    csv << "# manifest " << man.hash() << "\n";

    if (lemma == "Kconst") {
        csv << "theta,K_tilde,closed_form,rel_err\n";
        std::cout << "derived K~ against the closed form\n";
        for (double th : {0.25, 0.5, 0.9}) {
            PotentialSpec pot = spec.pot;
            pot.theta = th;
            const auto dc = derive_constants(pot);
            double closed = 0.0;
            switch (pot.family) {
                case PotentialFamily::PowerLog:
                    closed = 4.0 * pot.C2 * std::pow(std::log(1.0 + std::exp(1.0)), 2.0 * th);
                    break;
                case PotentialFamily::PowerIterLog:
                    closed = 4.0 * pot.C2 *
                             std::pow(std::log(std::log(1.0 + std::exp(std::exp(1.0)))), 2.0 * th);
                    break;
                case PotentialFamily::Power:
                    closed = pot.C2 * std::pow(4.0, 1.0 + th);
                    break;
                default:
                    throw NoMatchError("Kconst: no closed form for a custom potential");
            }
            const double rel = std::abs(dc.K_tilde - closed) / closed;
            csv << fmtg(th) << ',' << fmtg(dc.K_tilde) << ',' << fmtg(closed) << ',' << fmtg(rel)
                << "\n";
            std::cout << "  theta=" << fmtg(th) << "  K~=" << fmtg(dc.K_tilde)
                      << "  closed=" << fmtg(closed) << "  rel_err=" << fmtg(rel) << "\n";
        }
        write_text(man, g.out_dir, "verify_kconst.csv", csv.str());
        man.write(g.out_dir);
        return 0;
    }

    // the remaining suites need the decay regime
    if (classify_regime(spec).regime != Regime::L1OrliczRegime)
        throw RegimeError("verify: this suite needs the L1/Orlicz regime");

    std::optional<WitnessSpec> w;
    RateEvaluator ev(spec, lemma == "L53" ? std::optional<WitnessSpec>(cfg.witness)
                                          : std::nullopt);
    std::cout << "lemma suite " << lemma << "\n";
    if (lemma == "BorderRates") {
        csv << "log10_u,g_alpha,closed_form,ratio\n";
        for (int k = 20; k <= 60; k += 10) {
            const double log_u = k * kLn10;
            const double ga = spec.g.value(ev.alpha_logu(log_u));
            const double cf = border_rate_closed_form(spec, log_u);
            csv << k << ',' << fmtg(ga) << ',' << fmtg(cf) << ',' << fmtg(ga / cf) << "\n";
            std::cout << "  u=1e" << k << "  g(alpha)=" << fmtg(ga) << "  closed=" << fmtg(cf)
                      << "  ratio=" << fmtg(ga / cf) << "\n";
        }
        write_text(man, g.out_dir, "verify_border_rates.csv", csv.str());
    } else if (lemma == "L42a") {
        csv << "log10_u,log10_w_over_u_delta\n";
        const double delta = 0.1;
        for (int k = 20; k <= 60; k += 5) {
            const double log_u = k * kLn10;
            const double v = (ev.log_rate_upper(ev.alpha_logu(log_u)) - delta * log_u) / kLn10;
            csv << k << ',' << fmtg(v) << "\n";
            std::cout << "  u=1e" << k << "  log10(w(alpha)/u^0.1)=" << fmtg(v) << "\n";
        }
        write_text(man, g.out_dir, "verify_l42a.csv", csv.str());
    } else if (lemma == "L42b") {
        csv << "log10_u,g_beta_over_g_alpha\n";
        for (int k = 20; k <= 60; k += 5) {
            const double log_u = k * kLn10;
            const double r = spec.g.value(ev.beta_logu(log_u)) /
                             spec.g.value(ev.alpha_logu(log_u));
            csv << k << ',' << fmtg(r) << "\n";
            std::cout << "  u=1e" << k << "  g(beta)/g(alpha)=" << fmtg(r) << "\n";
        }
        write_text(man, g.out_dir, "verify_l42b.csv", csv.str());
    } else if (lemma == "L53") {
        const auto& witness = cfg.witness;
        const auto omega = analytic_omega(spec.op, spec.pot);
        const double upper =
            omega ? std::pow(2.0 / (2.0 - witness.b), *omega) : std::nan("");
        csv << "log10_u,g_gamma_over_g_alpha,bracket_lo,bracket_hi\n";
        std::cout << "  b=" << fmtg(witness.b)
                  << "  bracket=[1, " << fmtg(upper) << "]\n";
        for (int k = 20; k <= 60; k += 5) {
            const double log_u = k * kLn10;
            const double r = spec.g.value(ev.gamma_logu(log_u)) /
                             spec.g.value(ev.alpha_logu(log_u));
            csv << k << ',' << fmtg(r) << ",1," << fmtg(upper) << "\n";
            std::cout << "  u=1e" << k << "  g(gamma)/g(alpha)=" << fmtg(r) << "\n";
        }
        write_text(man, g.out_dir, "verify_l53.csv", csv.str());
    } else {
        throw ConfigError("schema: --lemma must be one of L42a,L42b,L53,Kconst,BorderRates");
    }
    man.write(g.out_dir);
    return 0;
}

int cmd_mc(const GlobalOpts& g, const std::string& experiment, std::int64_t paths, int steps,
           double t, const std::string& h_choice) {
    auto cfg_parsed = require_config(g);
    MCConfig cfg;
    cfg.seed = g.seed;
    cfg.n_paths = paths;
    cfg.n_steps = steps;
    cfg.t = t > 0 ? t : cfg_parsed.spec.t;
    cfg.spec = cfg_parsed.spec;
    cfg.threads = g.threads;

    MCResult res;
    if (experiment == "a2") {
        res = verify_A2_profile(cfg);
    } else if (experiment == "groundstate") {
        res = feynman_kac_groundstate(cfg);
    } else if (experiment == "tail") {
        HChoice h = HChoice::WitnessH;
        if (h_choice == "one") h = HChoice::One;
        else if (h_choice == "far") h = HChoice::IndicatorFar;
        else if (h_choice != "witness")
            throw ConfigError("schema: --h must be one of one,far,witness");
        res = tail_probe(cfg, h);
    } else {
        throw ConfigError("schema: --experiment must be one of a2,groundstate,tail");
    }

    Manifest man{"mc", g.config_path, hash_config_file(g.config_path),
                 "experiment=" + experiment + ";paths=" + std::to_string(paths) +
                     ";steps=" + std::to_string(steps) + ";t=" + fmtg(cfg.t) + ";h=" + h_choice,
                 g.seed, g.threads, {}};
    json out = json::parse(res.to_json());
    out["manifest"] = man.hash();
    std::cout << out.dump(2) << "\n";
    std::ostringstream curve;
    curve << "# manifest " << man.hash() << "\n";
    res.write_curve_csv(curve);
    write_text(man, g.out_dir, "mc_" + experiment + ".json", out.dump(2) + "\n");
    write_text(man, g.out_dir, "mc_" + experiment + "_curve.csv", curve.str());
    {
        std::stringstream cols(res.curve_columns);
        std::vector<std::string> names;
        std::string col;
        while (std::getline(cols, col, ',')) names.push_back(col);
        if (names.size() == 4)
            write_plotspec(man, g.out_dir, "mc_" + experiment + ".plotspec.json",
                           "mc_" + experiment + "_curve.csv", names[0],
                           {names[1], names[3]}, "log", "log", "mc " + experiment);
    }
    man.write(g.out_dir);
    return res.pass ? 0 : 2;
}

struct ExampleDef {
    const char* name;
    BuiltinPairing pairing;
    double theta_rate;    // border/rate tables (asymptotics reachable by 1e60)
    double theta_orlicz;  // threshold displays
    bool has_ultra_case;  // whether theta >= 1 flips the regime
};

int cmd_examples(const GlobalOpts& g, const std::string& which) {
    const ExampleDef defs[] = {
        {"ex61", BuiltinPairing::FractionalPowerLog, 0.1, 0.5, true},
        {"ex62", BuiltinPairing::FractionalIterLog, 0.05, 1.5, false},
        {"ex63", BuiltinPairing::RelativisticPower, 0.05, 0.5, true},
        {"ex64", BuiltinPairing::RelativisticPowerLog, 0.1, 1.5, false},
    };
    Manifest man{"examples", "", "none", "which=" + which, g.seed, g.threads, {}};

    for (const auto& def : defs) {
        if (which != "all" && which != def.name) continue;
        const fs::path dir = fs::path(g.out_dir) / def.name;
        std::ostringstream md;
        md << "# " << def.name << ": " << pairing_name(def.pairing) << "\n\n";

        // constants block
        std::ostringstream ccsv;
        ccsv << "# manifest " << man.hash() << "\ntheta,C6,K,K_tilde\n";
        md << "## derived constants\n\n";
        for (double th : {0.25, 0.5, 0.9}) {
            auto spec = builtin_model(def.pairing, th, 1.0);
            ccsv << fmtg(th) << ',' << fmtg(spec.C6) << ',' << fmtg(spec.K) << ','
                 << fmtg(spec.K_tilde) << "\n";
            md << "- theta = " << fmtg(th) << ": C6 = " << fmtg(spec.C6)
               << ", K = " << fmtg(spec.K) << ", K~ = " << fmtg(spec.K_tilde) << "\n";
        }
        write_text(man, dir, "constants.csv", ccsv.str());

        // regime verdicts for both theta cases
        md << "\n## regime\n\n";
        json regimes = json::object();
        for (double th : {0.5, 1.5}) {
            auto spec = builtin_model(def.pairing, th, 1.0);
            const auto rr = classify_regime(spec);
            regimes[fmtg(th)] = regime_name(rr.regime);
            md << "- theta = " << fmtg(th) << ": " << regime_name(rr.regime) << "\n";
        }
        write_text(man, dir, "regime.json",
                   json{{"manifest", man.hash()}, {"verdicts", regimes}}.dump(2) + "\n");

        // border-rate convergence table
        md << "\n## border rate g(alpha(u)) vs the closed form (theta = "
           << fmtg(def.theta_rate) << ")\n\n";
        auto spec_rate = builtin_model(def.pairing, def.theta_rate, 1.0);
        RateEvaluator ev(spec_rate);
        std::ostringstream bcsv;
        bcsv << "# manifest " << man.hash() << "\nlog10_u,g_alpha,closed_form,ratio\n";
        md << "| log10 u | ratio |\n|---|---|\n";
        for (int k = 20; k <= 60; k += 10) {
            const double log_u = k * kLn10;
            const double ga = spec_rate.g.value(ev.alpha_logu(log_u));
            const double cf = border_rate_closed_form(spec_rate, log_u);
            bcsv << k << ',' << fmtg(ga) << ',' << fmtg(cf) << ',' << fmtg(ga / cf) << "\n";
            md << "| " << k << " | " << fmtg(ga / cf) << " |\n";
        }
        write_text(man, dir, "border_rates.csv", bcsv.str());

        // Orlicz thresholds and verdicts at c = threshold/2 and 2*threshold
        md << "\n## Orlicz classification (theta = " << fmtg(def.theta_orlicz) << ")\n\n";
        auto spec_o = builtin_model(def.pairing, def.theta_orlicz, 1.0);
        auto witness = builtin_witness(spec_o);
        json orl = json::object();
        const bool exp_log_scale =
            (def.pairing == BuiltinPairing::FractionalPowerLog ||
             def.pairing == BuiltinPairing::RelativisticPower);
        auto mk_phi = [&](double c) {
            return exp_log_scale ? YoungFunction::exp_log(c, def.theta_orlicz)
                                 : YoungFunction::exp_log_log(c, def.theta_orlicz);
        };
        const auto rec = analytic_thresholds(spec_o, mk_phi(1.0));
        orl["success_threshold"] = rec.success_c;
        orl["failure_threshold"] = rec.failure_c;
        orl["display"] = rec.display;
        md << "- " << rec.display << "\n";
        md << "- success threshold: " << fmtg(rec.success_c)
           << ", failure threshold: " << fmtg(rec.failure_c) << "\n";
        {
            const auto below = classify_orlicz(spec_o, witness, mk_phi(0.5 * rec.success_c));
            const auto above = classify_orlicz(spec_o, witness, mk_phi(2.0 * rec.failure_c));
            orl["at_half_success"] = {{"a", outcome_name(below.a.verdict)},
                                      {"b", outcome_name(below.b.verdict)}};
            orl["at_twice_failure"] = {{"a", outcome_name(above.a.verdict)},
                                       {"b", outcome_name(above.b.verdict)}};
            md << "- c = success/2: criterion (a) " << outcome_name(below.a.verdict)
               << ", criterion (b) " << outcome_name(below.b.verdict) << "\n";
            md << "- c = 2 x failure: criterion (a) " << outcome_name(above.a.verdict)
               << ", criterion (b) " << outcome_name(above.b.verdict) << "\n";
        }
        write_text(man, dir, "orlicz.json",
                   json{{"manifest", man.hash()}, {"thresholds", orl}}.dump(2) + "\n");

        md << "\nmanifest " << man.hash() << "\n";
        write_text(man, dir, "summary.md", md.str());
        std::cout << def.name << " written to " << dir.string() << "\n";
    }
    man.write(g.out_dir);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"smoothing rates of ground-state-transformed non-local semigroups"};
    app.set_version_flag("--version", kVersion);
    GlobalOpts g;
    app.add_option("--config", g.config_path, "model config (JSON)")
        ->envname("INTRSM_CONFIG");
    app.add_option("--out", g.out_dir, "output directory")->envname("INTRSM_OUT");
    app.add_option("--format", g.format, "csv|json")->envname("INTRSM_FORMAT");
    app.add_option("--seed", g.seed, "random seed")->envname("INTRSM_SEED");
    app.add_option("--threads", g.threads, "worker threads")->envname("INTRSM_THREADS");
    app.require_subcommand(1);

    auto* classify = app.add_subcommand("classify", "regime classification + checks");
    bool skip_a1 = false;
    classify->add_flag("--skip-a1", skip_a1, "skip the convolution check");

    auto* rate = app.add_subcommand("rate", "rate table over a log-u grid");
    std::string u_decades = "10:60:10";
    bool linear = false;
    rate->add_option("--u-decades", u_decades, "LO:HI:STEP in log10 u");
    rate->add_flag("--linear", linear, "emit raw values where representable");

    auto* orlicz = app.add_subcommand("orlicz", "Orlicz-range classification");
    std::string phi_arg = "power,1";
    double t_override = 0.0;
    orlicz->add_option("--phi", phi_arg, "power,q | explog,c,theta | exploglog,c,theta");
    orlicz->add_option("--t", t_override, "override the model time");

    auto* gammac = app.add_subcommand("gamma", "annulus kernel evaluation");
    double tau = 1.0;
    std::string xs = "10", ys = "10", method = "quadrature";
    std::uint64_t samples = 200000;
    gammac->add_option("--tau", tau, "exponent weight")->required();
    gammac->add_option("--x", xs, "comma-separated coordinates");
    gammac->add_option("--y", ys, "comma-separated coordinates");
    gammac->add_option("--method", method, "quadrature|mc");
    gammac->add_option("--samples", samples, "Monte Carlo samples");

    auto* verify = app.add_subcommand("verify", "asymptotics verification tables");
    std::string lemma = "BorderRates";
    verify->add_option("--lemma", lemma, "L42a|L42b|L53|Kconst|BorderRates");

    auto* mc = app.add_subcommand("mc", "stochastic experiments");
    std::string experiment = "a2", h_choice = "witness";
    std::int64_t paths = 100000;
    int steps = 50;
    double mc_t = 0.0;
    mc->add_option("--experiment", experiment, "a2|groundstate|tail");
    mc->add_option("--paths", paths, "sample paths");
    mc->add_option("--steps", steps, "time steps");
    mc->add_option("--t", mc_t, "horizon (default: model time)");
    mc->add_option("--tail-h", h_choice, "tail probe function: one|far|witness");

    auto* examples = app.add_subcommand("examples", "reproduce the built-in example bundles");
    std::string which = "all";
    examples->add_option("--which", which, "ex61|ex62|ex63|ex64|all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << "{\"error\": \"usage\", \"detail\": \"" << e.what() << "\"}\n";
        return 64;
    }

    try {
        if (classify->parsed()) return cmd_classify(g, skip_a1);
        if (rate->parsed()) return cmd_rate(g, u_decades, linear);
        if (orlicz->parsed()) return cmd_orlicz(g, phi_arg, t_override);
        if (gammac->parsed()) return cmd_gamma(g, tau, xs, ys, method, samples);
        if (verify->parsed()) return cmd_verify(g, lemma);
        if (mc->parsed()) return cmd_mc(g, experiment, paths, steps, mc_t, h_choice);
        if (examples->parsed()) return cmd_examples(g, which);
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        std::cerr << "{\"error\": \"config\", \"detail\": \"" << what << "\"}\n";
        return what.rfind("io:", 0) == 0 ? 65 : 64;
    } catch (const RegimeError& e) {
        std::cerr << "{\"error\": \"regime\", \"detail\": \"" << e.what() << "\"}\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << "{\"error\": \"range\", \"detail\": \"" << e.what() << "\"}\n";
        return 2;
    } catch (const HypothesisError& e) {
        std::cerr << "{\"error\": \"hypothesis\", \"detail\": \"" << e.what() << "\"}\n";
        return 2;
    } catch (const NotEventuallyMonotone& e) {
        std::cerr << "{\"error\": \"not_eventually_monotone\", \"detail\": \"" << e.what()
                  << "\"}\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "{\"error\": \"domain\", \"detail\": \"" << e.what() << "\"}\n";
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"internal\", \"detail\": \"" << e.what() << "\"}\n";
        return 70;
    }
    return 70;
}
