#include "intrsm/kernelbound.hpp"
#include "intrsm/errors.hpp"
#include "intrsm/quadrature.hpp"
#include "intrsm/rng.hpp"
#include "intrsm/special.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace intrsm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double norm_of(std::span<const double> v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

double ball_volume(int d) { return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0); }

// log f1(|x-z|) + log f1(|z-y|) - tau g(|z|) for points given by distances
struct GammaGeometry {
    const ModelSpec& spec;
    double tau;

    double log_term(double dist_x, double dist_y, double z_norm) const {
        if (dist_x <= 0.0 || dist_y <= 0.0 || z_norm <= 0.0) return kNegInf;
        return spec.log_f1(dist_x) + spec.log_f1(dist_y) -
               tau * spec.g.value(z_norm);
    }
};

// ---- quadrature paths -------------------------------------------------------

double gamma_integral_1d(const ModelSpec& spec, double tau, double x, double y,
                         double inner, double outer, double peak, double rel_tol) {
    GammaGeometry geo{spec, tau};
    auto f = [&](double z) {
        return std::exp(geo.log_term(std::abs(x - z), std::abs(z - y), std::abs(z)) - peak);
    };
    std::vector<double> splits;
    const double rk = spec.f_one_radius;
    for (double c : {x, y})
        for (double s : {c - rk, c + rk, c - 1.0, c + 1.0}) splits.push_back(s);
    const double act = spec.g.activation_radius();
    if (act > 0.0) {
        splits.push_back(act);
        splits.push_back(-act);
    }
    double total = 0.0;
    total += integrate_split(f, -outer, -inner, splits, rel_tol, 0.0, 6000).value;
    total += integrate_split(f, inner, outer, splits, rel_tol, 0.0, 6000).value;
    return total;
}

double gamma_integral_radial(const ModelSpec& spec, double tau, std::span<const double> x,
                             std::span<const double> y, double inner, double outer,
                             double peak, double rel_tol) {
    const int d = spec.op.d;
    GammaGeometry geo{spec, tau};
    const double xn = norm_of(x), yn = norm_of(y);

    if (d == 2) {
        // polar angle of y relative to x
        const double xa = std::atan2(x.size() > 1 ? x[1] : 0.0, x[0]);
        const double ya = std::atan2(y.size() > 1 ? y[1] : 0.0, y[0]);
        auto radial = [&](double s) {
            auto ang = [&](double phi) {
                const double dx2 = xn * xn + s * s - 2.0 * xn * s * std::cos(phi - xa);
                const double dy2 = yn * yn + s * s - 2.0 * yn * s * std::cos(phi - ya);
                return std::exp(geo.log_term(std::sqrt(std::max(dx2, 0.0)),
                                             std::sqrt(std::max(dy2, 0.0)), s) - peak);
            };
            return s * integrate(ang, 0.0, 2.0 * kPi, rel_tol, 0.0, 800).value;
        };
        return integrate(radial, inner, outer, rel_tol, 0.0, 800).value;
    }

    // d == 3: frame with x along e3 and y in the (e1,e3)-plane
    std::array<double, 3> e3{0, 0, 1};
    if (xn > 0) for (int i = 0; i < 3; ++i) e3[i] = x[i] / xn;
    double y3 = 0.0;
    for (int i = 0; i < 3; ++i) y3 += y[i] * e3[i];
    const double y1 = std::sqrt(std::max(0.0, yn * yn - y3 * y3));

    auto radial = [&](double s) {
        auto polar = [&](double th) {
            const double ct = std::cos(th), st = std::sin(th);
            const double dx2 = xn * xn + s * s - 2.0 * xn * s * ct;
            const double A = yn * yn + s * s - 2.0 * s * y3 * ct;
            const double B = 2.0 * s * y1 * st;
            auto azim = [&](double phi) {
                const double dy2 = A - B * std::cos(phi);
                return std::exp(geo.log_term(std::sqrt(std::max(dx2, 0.0)),
                                             std::sqrt(std::max(dy2, 0.0)), s) - peak);
            };
            // cos(phi) symmetric around pi
            return 2.0 * st * integrate(azim, 0.0, kPi, rel_tol * 3, 0.0, 400).value;
        };
        return s * s * integrate(polar, 0.0, kPi, rel_tol * 3, 0.0, 400).value;
    };
    return integrate(radial, inner, outer, rel_tol, 0.0, 600).value;
}

// coarse peak estimate of the log-integrand over the annulus
double gamma_peak(const ModelSpec& spec, double tau, std::span<const double> x,
                  std::span<const double> y, double inner, double outer) {
    GammaGeometry geo{spec, tau};
    const int d = spec.op.d;
    const double xn = norm_of(x), yn = norm_of(y);
    double peak = kNegInf;
    auto consider = [&](std::span<const double> z) {
        const double zn = norm_of(z);
        if (zn <= inner || zn >= outer) return;
        double dx = 0.0, dy = 0.0;
        for (int i = 0; i < d; ++i) {
            dx += (x[i] - z[i]) * (x[i] - z[i]);
            dy += (y[i] - z[i]) * (y[i] - z[i]);
        }
        peak = std::max(peak, geo.log_term(std::sqrt(dx), std::sqrt(dy), zn));
    };
    // candidates: x, y pulled just inside the annulus, plus a coarse segment scan
    std::vector<double> z(d);
    auto scaled = [&](std::span<const double> c, double target_norm) {
        const double cn = norm_of(c);
        for (int i = 0; i < d; ++i) z[i] = cn > 0 ? c[i] * target_norm / cn : 0.0;
        consider(z);
    };
    for (double s : {inner * 1.01, 0.5 * (inner + outer), outer * 0.99}) {
        scaled(x, s);
        scaled(y, s);
    }
    if (xn > inner && xn < outer) scaled(x, xn);
    if (yn > inner && yn < outer) scaled(y, yn);
    for (int k = 0; k <= 64; ++k) {
        const double t = static_cast<double>(k) / 64.0;
        for (int i = 0; i < d; ++i) z[i] = (1 - t) * x[i] + t * y[i];
        consider(z);
        // same segment mirrored through the origin picks up the inner edge
        for (int i = 0; i < d; ++i) z[i] = -z[i];
        consider(z);
    }
    return peak;
}

GammaResult gamma_montecarlo(const ModelSpec& spec, double tau, std::span<const double> xin,
                             std::span<const double> yin, double inner, double outer,
                             double peak, const GammaOptions& opt) {
    const int d = spec.op.d;
    GammaGeometry geo{spec, tau};
    // canonical pair order keeps the estimate bit-identical under swaps
    std::vector<double> x(xin.begin(), xin.end()), y(yin.begin(), yin.end());
    if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end())) std::swap(x, y);

    const double vball = ball_volume(d);
    const double sd = sphere_surface(d);
    const double log_span = std::log(outer / inner);
    const int n_batches = 32;
    const std::uint64_t per_batch = (opt.samples + n_batches - 1) / n_batches;

    auto log_mix_density = [&](std::span<const double> z, double zn) {
        double q = 0.0;
        double dx = 0.0, dy = 0.0;
        for (int i = 0; i < d; ++i) {
            dx += (z[i] - x[i]) * (z[i] - x[i]);
            dy += (z[i] - y[i]) * (z[i] - y[i]);
        }
        if (dx < 1.0) q += 0.4 / vball;
        if (dy < 1.0) q += 0.4 / vball;
        if (zn > inner && zn < outer) q += 0.2 / (sd * std::pow(zn, d) * log_span);
        return q;
    };

    std::vector<double> batch_mean(n_batches, 0.0);
    auto run_batch = [&](int b) {
        Rng rng(opt.seed, static_cast<std::uint64_t>(b));
        std::vector<double> z(d), dir(d);
        double acc = 0.0;
        for (std::uint64_t i = 0; i < per_batch; ++i) {
            const double pick = rng.uniform();
            double nrm = 0.0;
            for (int k = 0; k < d; ++k) {
                dir[k] = rng.normal();
                nrm += dir[k] * dir[k];
            }
            nrm = std::sqrt(nrm);
            if (nrm == 0.0) continue;
            if (pick < 0.8) {
                const double* c = pick < 0.4 ? x.data() : y.data();
                const double rad = std::pow(rng.uniform(), 1.0 / d);
                for (int k = 0; k < d; ++k) z[k] = c[k] + rad * dir[k] / nrm;
            } else {
                const double s = inner * std::exp(rng.uniform() * log_span);
                for (int k = 0; k < d; ++k) z[k] = s * dir[k] / nrm;
            }
            const double zn = norm_of(z);
            if (zn <= inner || zn >= outer) continue;
            double dx = 0.0, dy = 0.0;
            for (int k = 0; k < d; ++k) {
                dx += (x[k] - z[k]) * (x[k] - z[k]);
                dy += (y[k] - z[k]) * (y[k] - z[k]);
            }
            const double lt = geo.log_term(std::sqrt(dx), std::sqrt(dy), zn) - peak;
            acc += std::exp(lt) / log_mix_density(z, zn);
        }
        batch_mean[b] = acc / static_cast<double>(per_batch);
    };

    const int nt = std::max(1, std::min(opt.threads, n_batches));
    if (nt == 1) {
        for (int b = 0; b < n_batches; ++b) run_batch(b);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (int b = t; b < n_batches; b += nt) run_batch(b);
            });
        for (auto& th : pool) th.join();
    }

    double mean = 0.0;
    for (double m : batch_mean) mean += m;  // fixed reduction order
    mean /= n_batches;
    double var = 0.0;
    for (double m : batch_mean) var += (m - mean) * (m - mean);
    var /= (n_batches - 1);
    const double half = 2.04 * std::sqrt(var / n_batches);  // t(31) quantile

    GammaResult out;
    out.method = GammaMethod::MonteCarlo;
    out.samples = per_batch * n_batches;
    if (mean <= 0.0) {
        out.log_value = kNegInf;
        out.ci_halfwidth_log = std::numeric_limits<double>::infinity();
        return out;
    }
    const double xn = norm_of(xin), yn = norm_of(yin);
    out.log_value = peak + std::log(mean) - spec.log_f1(xn) - spec.log_f1(yn);
    out.ci_halfwidth_log = std::log1p(std::min(half / mean, 1e300));
    return out;
}

} // namespace

GammaResult gamma_kernel(const ModelSpec& spec, double tau, std::span<const double> x,
                         std::span<const double> y, GammaMethod method,
                         const GammaOptions& opt) {
    const int d = spec.op.d;
    if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
        throw DimensionError("gamma_kernel: x, y must be d-vectors");
    if (!(tau > 0.0)) throw DomainError("gamma_kernel: tau > 0");
    if (method == GammaMethod::Quadrature && d > 3)
        throw DimensionError("gamma_kernel: quadrature path requires d <= 3");

    const double xn = norm_of(x), yn = norm_of(y);
    GammaResult zero;
    zero.method = method;
    zero.log_value = kNegInf;
    if (xn <= spec.rho || yn <= spec.rho) return zero;  // indicator

    const double inner = spec.rho - 1.0;
    const double outer = std::max(xn, yn);
    if (!(inner < outer)) return zero;

    const double peak = gamma_peak(spec, tau, x, y, inner, outer);
    if (peak == kNegInf) return zero;

    if (method == GammaMethod::MonteCarlo)
        return gamma_montecarlo(spec, tau, x, y, inner, outer, peak, opt);

    double integral;
    if (d == 1)
        integral = gamma_integral_1d(spec, tau, x[0], y[0], inner, outer, peak, opt.rel_tol);
    else
        integral = gamma_integral_radial(spec, tau, x, y, inner, outer, peak, opt.rel_tol);
    if (!(integral >= 0.0)) throw ConvergenceError("gamma_kernel: quadrature failed");

    GammaResult out;
    out.method = GammaMethod::Quadrature;
    out.log_value = integral > 0.0
                        ? peak + std::log(integral) - spec.log_f1(xn) - spec.log_f1(yn)
                        : kNegInf;
    return out;
}

Envelope q_envelope(const ModelSpec& spec, double t, std::span<const double> x,
                    std::span<const double> y, const GammaOptions& opt) {
    if (t < spec.T) throw DomainError("q_envelope: requires t >= T");
    const double lg_low =
        gamma_kernel(spec, spec.K_tilde * t, x, y, GammaMethod::Quadrature, opt).log_value;
    const double lg_up =
        gamma_kernel(spec, spec.K * t, x, y, GammaMethod::Quadrature, opt).log_value;
    Envelope e;
    const double lt = spec.lambda0 * t;
    e.log_lower = -std::log(spec.C) + std::max(0.0, lt + lg_low);
    e.log_upper = std::log(spec.C) + std::max(0.0, lt + lg_up);
    return e;
}

Envelope groundstate_envelope(const ModelSpec& spec, double abs_x, double C10) {
    if (!(C10 >= 1.0)) throw DomainError("groundstate_envelope: C10 >= 1");
    const double core = spec.log_f1(std::max(abs_x, 1e-300)) - std::log(spec.g.value(abs_x));
    return Envelope{core - std::log(C10), core + std::log(C10)};
}

// ---- capped-profile convolution ----------------------------------------------

namespace {

// (f1 * f1)(D) in d dimensions; translation-invariant, so only the center
// distance D matters
double conv_f1(const ModelSpec& spec, double D, double rel_tol) {
    const int d = spec.op.d;
    const double rk = spec.f_one_radius;
    if (d == 1) {
        auto f = [&](double u) { return std::exp(spec.log_f1(std::abs(u)) + spec.log_f1(std::abs(u - D))); };
        std::vector<double> splits{0.0, D, rk, -rk, D - rk, D + rk, 1.0, -1.0, D - 1.0, D + 1.0};
        const double W = std::max(64.0, 4.0 * D + 8.0);
        double total = integrate_split(f, -W, D + W, splits, rel_tol, 0.0, 6000).value;
        auto tail_right = [&](double u) { return f(u); };
        total += integrate_to_infinity(tail_right, D + W, rel_tol).value;
        auto tail_left = [&](double u) { return f(-u + D); };  // u -> D - u mirrors the left tail
        total += integrate_to_infinity(tail_left, D + W, rel_tol).value;
        return total;
    }
    auto angular = [&](double s) {
        if (d == 2) {
            auto ig = [&](double phi) {
                const double t2 = s * s + D * D - 2.0 * s * D * std::cos(phi);
                return std::exp(spec.log_f1(std::sqrt(std::max(t2, 1e-300))));
            };
            return 2.0 * integrate(ig, 0.0, kPi, rel_tol * 3, 0.0, 400).value;
        }
        auto ig = [&](double th) {
            const double t2 = s * s + D * D - 2.0 * s * D * std::cos(th);
            return std::sin(th) * std::exp(spec.log_f1(std::sqrt(std::max(t2, 1e-300))));
        };
        return 2.0 * kPi * integrate(ig, 0.0, kPi, rel_tol * 3, 0.0, 400).value;
    };
    auto radial = [&](double s) {
        return std::pow(s, d - 1) * std::exp(spec.log_f1(s)) * angular(s);
    };
    double total = integrate(radial, 1e-9, std::max(64.0, 2.0 * D + 8.0), rel_tol, 0.0, 1200).value;
    total += integrate_to_infinity(radial, std::max(64.0, 2.0 * D + 8.0), rel_tol).value;
    return total;
}

} // namespace

CheckReport check_DJP(const ModelSpec& spec, std::span<const PointPair> pairs) {
    CheckReport rep;
    rep.condition = Condition::A1;  // restatement of the convolution condition
    if (spec.op.d > 3) throw DimensionError("check_DJP: quadrature path requires d <= 3");

    std::vector<PointPair> battery(pairs.begin(), pairs.end());
    if (battery.empty()) {
        auto mk = [&](double a, double b) {
            PointPair p;
            p.x.assign(spec.op.d, 0.0);
            p.y.assign(spec.op.d, 0.0);
            p.x[0] = a;
            p.y[0] = b;
            return p;
        };
        battery = {mk(2, 0), mk(0.5, 0.3), mk(5, -5), mk(10, 3), mk(60, -40), mk(102, 2)};
    }

    auto sup_c8 = [&](double rel_tol) {
        double sup = 0.0, at = 0.0;
        for (const auto& p : battery) {
            double D2 = 0.0;
            for (size_t i = 0; i < p.x.size(); ++i) D2 += (p.x[i] - p.y[i]) * (p.x[i] - p.y[i]);
            const double D = std::sqrt(D2);
            const double ratio = conv_f1(spec, D, rel_tol) / std::exp(spec.log_f1(std::max(D, 1e-12)));
            if (ratio > sup) {
                sup = ratio;
                at = D;
            }
        }
        return std::pair{sup, at};
    };

    try {
        const auto coarse = sup_c8(1e-6);
        const auto fine = sup_c8(1e-8);
        const double drift = std::abs(fine.first - coarse.first) / fine.first;
        rep.empirical_constant = fine.first;
        rep.evidence.max_ratio = fine.first;
        rep.evidence.at_location = fine.second;
        rep.evidence.refinement_depth = 2;
        rep.evidence.values.emplace_back("refinement_drift", drift);

        // pointwise variant: sup over the battery and a radius grid of
        // f1(|x|) f1(|x-y|) / f1(|y|), in logs
        double log_c9 = 0.0;
        for (const auto& p : battery) {
            const double xn = norm_of(p.x), yn = norm_of(p.y);
            double D2 = 0.0;
            for (size_t i = 0; i < p.x.size(); ++i) D2 += (p.x[i] - p.y[i]) * (p.x[i] - p.y[i]);
            if (yn <= 0.0) continue;
            log_c9 = std::max(log_c9, spec.log_f1(std::max(xn, 1e-12)) +
                                          spec.log_f1(std::max(std::sqrt(D2), 1e-12)) -
                                          spec.log_f1(yn));
        }
        rep.evidence.values.emplace_back("C9_log", log_c9);
        rep.verdict = drift <= 0.05 ? Verdict::Pass : Verdict::Inconclusive;
    } catch (const ConvergenceError& e) {
        rep.verdict = Verdict::Fail;
        rep.evidence.note = std::string("divergence detected: ") + e.what();
    }
    return rep;
}

} // namespace intrsm
