#include "indicatrix/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "indicatrix/errors.hpp"

namespace indicatrix {

namespace {

GaussRule make_gauss_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n / 2 + n % 2; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

std::map<int, GaussRule> g_rules;
std::mutex g_rules_mutex;

template <typename T>
T adaptive_impl(const std::function<T(double)>& f, double a, double b, double whole_scale,
                double rel_tol, double abs_tol, int order, int depth) {
    T coarse = gauss_panel(f, a, b, order);
    double m = 0.5 * (a + b);
    T fine = gauss_panel(f, a, m, order) + gauss_panel(f, m, b, order);
    double err = std::abs(fine - coarse);
    double tol = std::max(abs_tol, rel_tol * std::max(whole_scale, std::abs(fine)));
    if (err <= tol || depth <= 0) {
        if (depth <= 0 && err > 16 * tol)
            throw AccuracyError("adaptive quadrature: subdivision limit reached", err);
        return fine;
    }
    // Children get the parent tolerance; whole_scale keeps the relative
    // criterion anchored to the full integral magnitude.
    return adaptive_impl(f, a, m, whole_scale, rel_tol, abs_tol * 0.5, order, depth - 1) +
           adaptive_impl(f, m, b, whole_scale, rel_tol, abs_tol * 0.5, order, depth - 1);
}

} // namespace

const GaussRule& gauss_rule(int order) {
    if (order < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
    std::lock_guard<std::mutex> lock(g_rules_mutex);
    auto it = g_rules.find(order);
    if (it == g_rules.end()) it = g_rules.emplace(order, make_gauss_rule(order)).first;
    return it->second;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int order, int max_depth) {
    if (a == b) return 0.0;
    double scale = std::abs(gauss_panel(f, a, b, order));
    return adaptive_impl<double>(f, a, b, scale, rel_tol, abs_tol, order, max_depth);
}

std::complex<double> integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol, double abs_tol, int order, int max_depth) {
    if (a == b) return {0.0, 0.0};
    double scale = std::abs(gauss_panel(f, a, b, order));
    return adaptive_impl<std::complex<double>>(f, a, b, scale, rel_tol, abs_tol, order, max_depth);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 matched samples");
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissa");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    if (n > 2) fit.slope_ci = std::sqrt(ss / (n - 2) / sxx);
    return fit;
}

} // namespace indicatrix
