#ifndef INDICATRIX_QUADRATURE_HPP
#define INDICATRIX_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace indicatrix {

// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration, cached per order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_rule(int order);

template <typename F>
auto gauss_panel(F&& f, double a, double b, int order) -> decltype(f(a)) {
    const GaussRule& r = gauss_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(a)) acc{};
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

template <typename F>
auto composite_gauss(F&& f, double a, double b, int panels, int order) -> decltype(f(a)) {
    decltype(f(a)) acc{};
    if (panels < 1) panels = 1;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k)
        acc += gauss_panel(f, a + k * h, a + (k + 1) * h, order);
    return acc;
}

// Composite Gauss on a geometric (log-spaced) partition; for integrands on
// ranges spanning many orders of magnitude. Requires 0 < a < b.
template <typename F>
auto composite_gauss_log(F&& f, double a, double b, int panels_per_octave, int order)
    -> decltype(f(a)) {
    const double la = std::log(a), lb = std::log(b);
    const int panels = std::max(1, static_cast<int>((lb - la) / std::log(2.0) * panels_per_octave + 1));
    auto g = [&](double u) { double r = std::exp(u); return f(r) * r; };
    return composite_gauss(g, la, lb, panels, order);
}

// Globally adaptive bisection: accepts an interval when the two-half Gauss
// estimate agrees with the one-panel estimate. Error heuristic is the usual
// |fine - coarse|.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 0.0, int order = 15,
                          int max_depth = 48);

std::complex<double> integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol = 1e-10, double abs_tol = 0.0, int order = 15, int max_depth = 48);

// Least-squares slope/intercept fit of y against x; residual is the RMS of
// the fit residuals, ci the 1-sigma slope uncertainty.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    double slope_ci = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace indicatrix

#endif
