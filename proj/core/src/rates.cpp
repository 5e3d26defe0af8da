#include "intrsm/rates.hpp"
#include "intrsm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

namespace intrsm {

namespace {

constexpr double kLn10 = 2.30258509299404568402;

double sigma_inverse(const SigmaSpec& s, double target) {
    switch (s.kind) {
        case SigmaKind::Half: return 2.0 * target;
        case SigmaKind::MinusOne: return target >= 1.0 ? target + 1.0 : 2.0 * target;
        case SigmaKind::Custom: break;
    }
    // increasing continuous custom sigma: expand then bisect
    double lo = 1e-8, hi = 1.0;
    int guard = 0;
    while (s(hi) < target) {
        hi *= 2.0;
        if (++guard > 400) throw NoBracketError("sigma_inverse: expansion cap");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (s(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

double log_G(const ModelSpec& spec, double r) {
    return 2.0 * spec.f.log_value(r) + spec.K_tilde * spec.t * spec.g.value(r);
}

double log_H(const ModelSpec& spec, const WitnessSpec& w, double r) {
    return 2.0 * spec.f.log_value(r) + (spec.op.d - 1.0) * std::log(r) +
           w.eta.log_value(r) + spec.K_tilde * spec.t * spec.g.value(r);
}

double find_r0(const ModelSpec& spec, CompositeSelector sel, const WitnessSpec* w,
               double r_cap) {
    if (sel == CompositeSelector::Ht && w == nullptr)
        throw DomainError("find_r0: Ht selector needs a witness");

    std::function<double(double)> phi;
    switch (sel) {
        case CompositeSelector::Gt:
            phi = [&spec](double r) { return log_G(spec, r); };
            break;
        case CompositeSelector::Ht:
            phi = [&spec, w](double r) { return log_H(spec, *w, r); };
            break;
        case CompositeSelector::FExpKtg:
            phi = [&spec](double r) { return spec.log_f1(r) + spec.K * spec.t * spec.g.value(r); };
            break;
    }

    // structural lower limits: past the envelope radius, past the f1 kink,
    // g large enough for the inversion identities, sigma clear of the annulus
    double base = std::max(spec.rho, spec.f_one_radius);
    if (sel != CompositeSelector::FExpKtg) {
        const double need_log_g = -std::log(spec.K_tilde);  // g >= 1/K~
        if (spec.g.plateau_log() < need_log_g)
            base = std::max(base, spec.g.invert_log(need_log_g));
    }
    if (sel == CompositeSelector::Ht)
        base = std::max(base, sigma_inverse(w->sigma, spec.rho + 1.0));

    if (!(base < r_cap)) throw NotEventuallyMonotone("find_r0: structural base beyond cap");

    const double y0 = std::log(base), y1 = std::log(r_cap);
    const int per_decade = 20;
    const int n = std::max(4, static_cast<int>((y1 - y0) / kLn10 * per_decade));
    std::vector<double> ys(n + 1), vals(n + 1);
    for (int i = 0; i <= n; ++i) {
        ys[i] = y0 + (y1 - y0) * i / n;
        vals[i] = phi(std::exp(ys[i]));
    }
    int last_rise = -1;
    for (int i = 0; i < n; ++i)
        if (vals[i + 1] >= vals[i]) last_rise = i;

    double y_mono = y0;
    if (last_rise >= 0) {
        if (ys[last_rise] > y1 - kLn10)
            throw NotEventuallyMonotone("find_r0: composite still rising in the last decade");
        // refine inside [y_i, y_{i+2}]: first subgrid point from which the
        // composite decreases
        const double a = ys[last_rise];
        const double b = ys[std::min(last_rise + 2, n)];
        const int m = 64;
        double prev = phi(std::exp(a));
        y_mono = b;
        for (int j = 1; j <= m; ++j) {
            const double y = a + (b - a) * j / m;
            const double v = phi(std::exp(y));
            if (v >= prev) y_mono = y;  // still rising here
            prev = v;
        }
    }

    double r0 = std::max(base, std::exp(y_mono));

    if (sel == CompositeSelector::FExpKtg) {
        // additionally require f1 <= e^{-K t g}, i.e. phi <= 0, from r0 on
        if (phi(r0) > 0.0) {
            double lo = std::log(r0), hi = lo + 1.0;
            int guard = 0;
            while (phi(std::exp(hi)) > 0.0) {
                lo = hi;
                hi += 1.0;
                if (std::exp(hi) > r_cap || ++guard > 400)
                    throw NotEventuallyMonotone("find_r0: f1 e^{K t g} stays above 1 below cap");
            }
            for (int i = 0; i < 100; ++i) {
                const double mid = 0.5 * (lo + hi);
                (phi(std::exp(mid)) > 0.0 ? lo : hi) = mid;
            }
            r0 = std::exp(hi);
        }
    }
    return r0;
}

RateEvaluator::RateEvaluator(ModelSpec spec, std::optional<WitnessSpec> witness)
    : spec_(std::move(spec)), witness_(std::move(witness)) {
    r0_beta_ = find_r0(spec_, CompositeSelector::Gt);
    log_u0_beta_ = std::log(spec_.kappa_tilde) - log_G(spec_, r0_beta_);
    if (witness_) {
        if (witness_->b < 2.0) {
            r0_gamma_ = find_r0(spec_, CompositeSelector::Ht, &*witness_);
            log_u0_gamma_ = std::log(spec_.kappa_tilde) - log_H(spec_, *witness_, r0_gamma_);
            witness_ok_ = true;
        }
    }
}

double RateEvaluator::r0_gamma() const {
    if (!witness_) throw DomainError("gamma path requires a witness");
    if (!witness_ok_)
        throw HypothesisError("witness parameter b >= 2; gamma inversion undefined");
    return r0_gamma_;
}

double RateEvaluator::log_u0_gamma() const {
    r0_gamma();  // validity checks
    return log_u0_gamma_;
}

double RateEvaluator::invert_decreasing(double target, double y_start,
                                        const std::function<double(double)>& phi) const {
    const double tol = 2e-10;
    double ylo = y_start;
    double vlo = phi(std::exp(ylo));
    if (std::abs(vlo - target) <= tol) return std::exp(ylo);
    if (vlo < target) throw RangeError("inversion target above value at r0");
    double step = 1.0, yhi = ylo;
    double vhi = vlo;
    int guard = 0;
    while (vhi > target) {
        yhi += step;
        step *= 2.0;
        vhi = phi(std::exp(yhi));
        if (++guard > 300) throw NoBracketError("decreasing inversion: bracket cap");
    }
    for (int i = 0; i < 200; ++i) {
        const double ym = 0.5 * (ylo + yhi);
        const double vm = phi(std::exp(ym));
        if (std::abs(vm - target) <= tol) return std::exp(ym);
        if (vm > target)
            ylo = ym;
        else
            yhi = ym;
        if (yhi - ylo < 4e-16 * std::max(1.0, std::abs(ym))) return std::exp(ym);
    }
    return std::exp(0.5 * (ylo + yhi));
}

double RateEvaluator::alpha_logu(double log_u) const {
    const double log_kappa = std::log(spec_.kappa);
    if (log_u < log_kappa - 1e-12) throw RangeError("alpha: u below kappa");
    return spec_.f.invert_log(0.5 * (log_kappa - log_u), 1e-10);
}

double RateEvaluator::beta_logu(double log_u) const {
    if (log_u < log_u0_beta_ - 1e-9) throw RangeError("beta: u below u0");
    const double target = std::log(spec_.kappa_tilde) - log_u;
    return invert_decreasing(target, std::log(r0_beta_),
                             [this](double r) { return log_G(spec_, r); });
}

double RateEvaluator::gamma_logu(double log_u) const {
    r0_gamma();  // validity checks
    if (log_u < log_u0_gamma_ - 1e-9) throw RangeError("gamma: u below u0");
    const double target = std::log(spec_.kappa_tilde) - log_u;
    return invert_decreasing(target, std::log(r0_gamma_),
                             [this](double r) { return log_H(spec_, *witness_, r); });
}

double RateEvaluator::alpha(double u) const { return alpha_logu(std::log(u)); }
double RateEvaluator::beta(double u) const { return beta_logu(std::log(u)); }
double RateEvaluator::gamma(double u) const { return gamma_logu(std::log(u)); }

double RateEvaluator::log_rate_upper(double r) const {
    const double gv = spec_.g.value(r);
    return 2.0 * std::log(gv) + spec_.K * spec_.t * gv;
}

double RateEvaluator::log_rate_lower(double r) const {
    const double gv = spec_.g.value(r);
    return 2.0 * std::log(gv) + spec_.K_tilde * spec_.t * gv;
}

double RateEvaluator::log_rate_witness(double r) const {
    if (!witness_) throw DomainError("rate_witness requires a witness");
    const double s = witness_->sigma(r);
    if (!(s < r)) throw DomainError("rate_witness: sigma(r) must be < r");
    return log_rate_lower(r) + witness_->eta.log_value(r) - std::log(r - s);
}

double RateEvaluator::rate_upper(double r) const { return std::exp(log_rate_upper(r)); }
double RateEvaluator::rate_lower(double r) const { return std::exp(log_rate_lower(r)); }
double RateEvaluator::rate_witness(double r) const { return std::exp(log_rate_witness(r)); }

double RateEvaluator::log_tail_upper(double log_u) const {
    return -log_u + std::log(spec_.C) - log_rate_upper(alpha_logu(log_u));
}

double RateEvaluator::log_tail_lower_sup(double log_u) const {
    return -log_u + std::log(spec_.C_tilde) - log_rate_lower(beta_logu(log_u));
}

double RateEvaluator::log_tail_witness(double log_u) const {
    return -log_u + std::log(spec_.C_tilde) - log_rate_witness(gamma_logu(log_u));
}

// ---- tables -----------------------------------------------------------------

void RateTable::write_csv(std::ostream& os, bool linear) const {
    os << "u,log_u,alpha,beta,gamma,w,w_tilde,v,upper,lower_sup,lower_witness,flags\n";
    auto cell = [&](double log10_val, bool present) -> std::string {
        if (!present) return "";
        if (!linear) return fmt(log10_val);
        if (std::abs(log10_val) > 300.0) return "";  // not representable
        return fmt(std::pow(10.0, log10_val));
    };
    for (const RatePoint& p : rows) {
        const bool has_a = p.flags.find("below_kappa") == std::string::npos;
        const bool has_b = has_a && p.flags.find("below_u0") == std::string::npos;
        const bool has_g = p.flags.find("no_witness") == std::string::npos &&
                           p.flags.find("below_u0_witness") == std::string::npos &&
                           p.flags.find("witness_invalid") == std::string::npos;
        os << fmt(p.u) << ',' << fmt(p.log10_u) << ',' << (has_a ? fmt(p.alpha) : "") << ','
           << (has_b ? fmt(p.beta) : "") << ',' << (has_g ? fmt(p.gamma) : "") << ','
           << cell(p.log10_w, has_a) << ',' << cell(p.log10_w_tilde, has_b) << ','
           << cell(p.log10_v, has_g) << ',' << cell(p.log10_upper, has_a) << ','
           << cell(p.log10_lower_sup, has_b) << ',' << cell(p.log10_lower_witness, has_g)
           << ',' << p.flags << '\n';
    }
}

void RateTable::write_json(std::ostream& os) const {
    os << "[";
    for (size_t i = 0; i < rows.size(); ++i) {
        const RatePoint& p = rows[i];
        if (i) os << ",";
        os << "\n  {\"u\": " << fmt(p.u) << ", \"log10_u\": " << fmt(p.log10_u)
           << ", \"alpha\": " << fmt(p.alpha) << ", \"beta\": " << fmt(p.beta)
           << ", \"gamma\": " << fmt(p.gamma) << ", \"log10_w\": " << fmt(p.log10_w)
           << ", \"log10_w_tilde\": " << fmt(p.log10_w_tilde)
           << ", \"log10_v\": " << fmt(p.log10_v)
           << ", \"log10_upper\": " << fmt(p.log10_upper)
           << ", \"log10_lower_sup\": " << fmt(p.log10_lower_sup)
           << ", \"log10_lower_witness\": " << fmt(p.log10_lower_witness)
           << ", \"flags\": \"" << p.flags << "\"}";
    }
    os << "\n]\n";
}

RateTable rate_table(const ModelSpec& spec, const std::optional<WitnessSpec>& witness,
                     std::span<const double> log10_u_grid, int threads) {
    if (!std::is_sorted(log10_u_grid.begin(), log10_u_grid.end()))
        throw DomainError("rate_table: u grid must be sorted");
    RateEvaluator ev(spec, witness);
    RateTable table;
    table.rows.resize(log10_u_grid.size());

    auto fill = [&](size_t i) {
        const double l10 = log10_u_grid[i];
        const double log_u = l10 * kLn10;
        RatePoint p;
        p.u = std::pow(10.0, l10);
        p.log10_u = l10;
        std::vector<std::string> flags;
        if (log_u < std::log(spec.kappa) - 1e-12) {
            flags.emplace_back("below_kappa");
        } else {
            p.alpha = ev.alpha_logu(log_u);
            p.log10_w = ev.log_rate_upper(p.alpha) / kLn10;
            p.log10_upper = ev.log_tail_upper(log_u) / kLn10;
        }
        if (flags.empty() && log_u >= ev.log_u0_beta() - 1e-9) {
            p.beta = ev.beta_logu(log_u);
            p.log10_w_tilde = ev.log_rate_lower(p.beta) / kLn10;
            p.log10_lower_sup = ev.log_tail_lower_sup(log_u) / kLn10;
        } else if (flags.empty()) {
            flags.emplace_back("below_u0");
        }
        if (!witness) {
            flags.emplace_back("no_witness");
        } else if (witness->b >= 2.0) {
            flags.emplace_back("witness_invalid");
        } else if (log_u >= ev.log_u0_gamma() - 1e-9 && log_u >= std::log(spec.kappa) - 1e-12) {
            p.gamma = ev.gamma_logu(log_u);
            p.log10_v = ev.log_rate_witness(p.gamma) / kLn10;
            p.log10_lower_witness = ev.log_tail_witness(log_u) / kLn10;
        } else {
            flags.emplace_back("below_u0_witness");
        }
        for (size_t k = 0; k < flags.size(); ++k) {
            if (k) p.flags += ';';
            p.flags += flags[k];
        }
        table.rows[i] = std::move(p);
    };

    const size_t n = log10_u_grid.size();
    const int nt = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (nt == 1) {
        for (size_t i = 0; i < n; ++i) fill(i);
    } else {
        std::vector<std::thread> pool;
        for (int tix = 0; tix < nt; ++tix)
            pool.emplace_back([&, tix] {
                for (size_t i = tix; i < n; i += nt) fill(i);
            });
        for (auto& th : pool) th.join();
    }
    return table;
}

} // namespace intrsm
