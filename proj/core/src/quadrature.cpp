#include "intrsm/quadrature.hpp"
#include "intrsm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace intrsm {

namespace {

// 15-point Kronrod abscissae (positive half) with Kronrod and embedded
// 7-point Gauss weights, QUADPACK dqk15 values.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        k15 += kWgk[i] * fsum;
        if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
    }
    k15 *= h;
    g7 *= h;
    double err = std::abs(k15 - g7);
    // QUADPACK-style sharpening of the raw difference
    if (err > 0.0) err = std::min(err, std::pow(200.0 * err, 1.5));
    return Panel{a, b, k15, err};
}

} // namespace

QuadratureResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    Panel p = eval_panel(f, a, b);
    return {p.value, p.error, 15};
}

QuadratureResult integrate_split(const std::function<double(double)>& f, double a, double b,
                                 const std::vector<double>& interior_splits,
                                 double rel_tol, double abs_tol, int max_panels) {
    if (!(a < b)) return {0.0, 0.0, 0};
    std::vector<double> pts;
    pts.push_back(a);
    for (double s : interior_splits)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::priority_queue<Panel> heap;
    double total = 0.0, err = 0.0;
    int evals = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Panel p = eval_panel(f, pts[i], pts[i + 1]);
        total += p.value;
        err += p.error;
        evals += 15;
        heap.push(p);
    }
    int n = static_cast<int>(heap.size());
    auto tol = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
    while (err > tol() && n < max_panels) {
        Panel worst = heap.top();
        heap.pop();
        total -= worst.value;
        err -= worst.error;
        const double m = 0.5 * (worst.a + worst.b);
        if (!(worst.a < m && m < worst.b)) {  // interval at machine resolution
            total += worst.value;
            err += 0.0;
            continue;
        }
        Panel l = eval_panel(f, worst.a, m);
        Panel r = eval_panel(f, m, worst.b);
        total += l.value + r.value;
        err += l.error + r.error;
        evals += 30;
        heap.push(l);
        heap.push(r);
        ++n;
    }
    if (err > tol() && err > 1e-14 * std::abs(total) + 1e-300)
        throw ConvergenceError("adaptive quadrature: panel budget exhausted");
    return {total, err, evals};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol, int max_panels) {
    return integrate_split(f, a, b, {}, rel_tol, abs_tol, max_panels);
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       double rel_tol, int max_doublings) {
    if (!(a > 0.0)) throw QuadratureError("integrate_to_infinity requires a > 0");
    double total = 0.0, err = 0.0;
    int evals = 0;
    double lo = a;
    double prev_panel = std::numeric_limits<double>::infinity();
    int flat = 0;
    for (int k = 0; k < max_doublings; ++k) {
        const double hi = 2.0 * lo;
        if (hi > 1e290)
            throw ConvergenceError("integrate_to_infinity: no decay within double range");
        QuadratureResult p = integrate(f, lo, hi, rel_tol * 0.5, 0.0, 800);
        total += p.value;
        err += p.abs_error;
        evals += p.evaluations;
        const double mag = std::abs(p.value);
        if (mag <= rel_tol * std::abs(total) + 1e-300) return {total, err, evals};
        // divergence watch: panels holding steady (or growing) for a long run
        if (mag > 0.995 * prev_panel) {
            if (++flat > 100)
                throw ConvergenceError("integrate_to_infinity: tail panels do not decay");
        } else {
            flat = 0;
        }
        prev_panel = mag;
        lo = hi;
    }
    throw ConvergenceError("integrate_to_infinity: doubling cap reached");
}

double log_add(double la, double lb) {
    if (la == -std::numeric_limits<double>::infinity()) return lb;
    if (lb == -std::numeric_limits<double>::infinity()) return la;
    const double m = std::max(la, lb);
    return m + std::log1p(std::exp(std::min(la, lb) - m));
}

double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     double log_abs_tol, int max_refine) {
    if (!(a < b)) return -std::numeric_limits<double>::infinity();
    // composite GK15 in log space; refine by doubling the panel count until
    // the log-value is stable
    auto composite = [&](int n_panels) {
        double acc = -std::numeric_limits<double>::infinity();
        const double w = (b - a) / n_panels;
        for (int p = 0; p < n_panels; ++p) {
            const double pa = a + p * w;
            const double c = pa + 0.5 * w;
            const double h = 0.5 * w;
            // log of sum(w_i * exp(log_f(x_i))) via running log-add
            double panel = log_f(c) + std::log(kWgk[7]);
            for (int i = 0; i < 7; ++i) {
                const double dx = h * kXgk[i];
                const double lw = std::log(kWgk[i]);
                panel = log_add(panel, log_f(c - dx) + lw);
                panel = log_add(panel, log_f(c + dx) + lw);
            }
            acc = log_add(acc, panel + std::log(h));
        }
        return acc;
    };
    int n = std::max(2, static_cast<int>((b - a) / 3.0));
    double prev = composite(n);
    for (int r = 0; r < max_refine; ++r) {
        n *= 2;
        const double cur = composite(n);
        if (std::abs(cur - prev) < log_abs_tol) return cur;
        prev = cur;
    }
    throw ConvergenceError("log_integrate: refinement cap reached");
}

} // namespace intrsm
