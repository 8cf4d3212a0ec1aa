#include "indicatrix/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "indicatrix/bessel.hpp"
#include "indicatrix/errors.hpp"
#include "indicatrix/quadrature.hpp"

namespace indicatrix::integrability {

using geometry::DomainSpec;
using spectra::Engine;

namespace {

// Angular symmetry of |fhat| lets the theta integral run over a sector:
// |fhat(-xi)| = |fhat(xi)| always (real indicator), rectangles are even in
// each coordinate, disks are radial regardless of center (phase only).
double symmetry_sector(const DomainSpec& d) {
    const geometry::Shape& s = d.shape();
    if (std::holds_alternative<geometry::DiskShape>(s)) return 0.0;
    if (const auto* rect = std::get_if<geometry::RectangleShape>(&s)) {
        if (rect->widths.size() == 2)
            return rect->widths[0] == rect->widths[1] ? M_PI / 4.0 : M_PI / 2.0;
    }
    return M_PI;
}

struct RadialEvaluator {
    const DomainSpec& d;
    const EnergyOptions& opts;
    double max_support_radius;

    double abs_ft(Vec2 xi) const {
        return std::abs(spectra::transform_value(d, xi, opts.engine, opts.quad_order));
    }

    // int_{r_lo}^{r_hi} |fhat(r e_theta)|^p r dr with oscillation-aware
    // panels; also tracks the max |fhat| seen.
    double line(double theta, double p, double r_lo, double r_hi, double* sup) const {
        Vec2 e{std::cos(theta), std::sin(theta)};
        auto f = [&](double r) {
            double a = abs_ft(e * r);
            if (sup && a > *sup) *sup = a;
            return std::pow(a, p) * r;
        };
        double cycles = (r_hi - r_lo) * max_support_radius / (2.0 * M_PI);
        int panels = std::max(4, static_cast<int>(std::ceil(2.0 * cycles)) + 1);
        return composite_gauss(f, r_lo, r_hi, panels, opts.radial_order);
    }
};

// Prefix quadrature of a fixed positive 1-D profile f on uniform panels:
// between(a, b) resolves partial panels directly, so narrow slices keep
// full relative accuracy instead of dying to cancellation.
class PrefixLine {
public:
    PrefixLine(std::function<double(double)> f, double panel, double y_max, int order)
        : f_(std::move(f)), panel_(panel), order_(order) {
        std::size_t n = static_cast<std::size_t>(std::ceil(y_max / panel)) + 1;
        prefix_.resize(n + 1, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            prefix_[k + 1] = prefix_[k] + gauss_panel(f_, k * panel_, (k + 1) * panel_, order_);
    }

    double between(double a, double b) const {
        if (b <= a) return 0.0;
        auto ka = static_cast<std::size_t>(a / panel_);
        auto kb = static_cast<std::size_t>(b / panel_);
        if (kb >= prefix_.size() - 1) throw std::out_of_range("PrefixLine: beyond table");
        if (ka == kb) return gauss_panel(f_, a, b, order_);
        double head = gauss_panel(f_, a, (ka + 1) * panel_, order_);
        double tail = gauss_panel(f_, kb * panel_, b, order_);
        return head + (prefix_[kb] - prefix_[ka + 1]) + tail;
    }

private:
    std::function<double(double)> f_;
    double panel_;
    int order_;
    std::vector<double> prefix_;
};

// |shat(y)|^p for the 1-D edge factor of a rectangle of width w:
// |shat(y)| = 2 |sin(y w / 2)| / |y|, continuous at 0 with value w.
double edge_abs_pow(double w, double p, double y) {
    double a = std::abs(y) < 1e-12 ? w * (1.0 - y * y * w * w / 24.0)
                                   : std::abs(2.0 * std::sin(0.5 * y * w) / y);
    return std::pow(a, p);
}

// Rectangles: |fhat| separates, so the annulus energy reduces to a 1-D
// outer integral against a prefix-summed inner line. Accuracy is uniform
// in j, unlike the generic angular estimator.
LevelEnergy rectangle_annulus_energy(const std::vector<double>& widths, double p, double r_lo,
                                     double r_hi) {
    const double w1 = widths[0], w2 = widths[1];
    // Half-period panels put the |sin| cusps on panel boundaries.
    PrefixLine inner([&](double y) { return edge_abs_pow(w2, p, y); }, M_PI / w2,
                     r_hi * 1.001 + 4.0 * M_PI / w2, 16);

    // Quarter-circle parameterization x = R sin(phi), y-limits from the
    // annulus: for x <= r_lo the slice spans [sqrt(r_lo^2 - x^2),
    // sqrt(r_hi^2 - x^2)], beyond it starts at 0.
    auto slice = [&](double x) {
        double y_hi = std::sqrt(std::max(0.0, r_hi * r_hi - x * x));
        double y_lo = x < r_lo ? std::sqrt(r_lo * r_lo - x * x) : 0.0;
        return edge_abs_pow(w1, p, x) * inner.between(y_lo, y_hi);
    };
    auto integrand = [&](double phi) {
        double x = r_hi * std::sin(phi);
        return slice(x) * r_hi * std::cos(phi);
    };
    double cycles = r_hi * (w1 + w2) / (2.0 * M_PI);
    int panels = std::max(16, static_cast<int>(std::ceil(2.0 * cycles)));
    LevelEnergy out;
    out.value = 4.0 * composite_gauss(integrand, 0.0, 0.5 * M_PI, panels, 8);
    out.err_estimate = 1e-5 * out.value;
    // Axis values dominate: |fhat(r e_1)| <= shat1(r) w2 on the annulus.
    out.sup_abs = r_lo > 0.0 ? std::min(w1 * w2, (2.0 / r_lo) * std::max(w1, w2)) : w1 * w2;
    return out;
}

// Affine images of disks: substituting v = Q^T u turns the annulus into an
// elliptical one with smooth angular radius kappa(theta); the radial
// integrand is the disk's, fully resolved by oscillation-aware panels.
LevelEnergy ellipse_annulus_energy(const geometry::AffineImageShape& shape, double radius,
                                   double p, double r_lo, double r_hi) {
    const double det = std::abs(shape.matrix.det());
    Mat2 qi = shape.matrix.inverse().transpose(); // Q^{-T}
    auto kappa = [&](double theta) {
        Vec2 e{std::cos(theta), std::sin(theta)};
        return 1.0 / qi.apply(e).norm();
    };
    auto g_pow = [&](double r) {
        double a = r < 1e-12 ? M_PI * radius * radius
                             : 2.0 * M_PI * radius * std::abs(bessel_j1(radius * r)) / r;
        return std::pow(a, p) * r;
    };
    double kmax = 0.0, kmin = 1e300;
    for (int i = 0; i < 256; ++i) {
        double k = kappa(M_PI * i / 256.0);
        kmax = std::max(kmax, k);
        kmin = std::min(kmin, k);
    }
    PrefixLine radial(g_pow, M_PI / (2.0 * radius), r_hi * kmax * 1.001 + 8.0, 12);

    auto integrand = [&](double theta) {
        double k = kappa(theta);
        return radial.between(r_lo * k, r_hi * k);
    };
    LevelEnergy out;
    // |fhat| is even, so half the circle doubled; kappa is smooth.
    out.value = std::pow(det, p - 1.0) * 2.0 *
                composite_gauss(integrand, 0.0, M_PI, 64, 10);
    out.err_estimate = 1e-5 * out.value;
    // Envelope bound at the inner elliptical radius.
    double rho_min = std::max(r_lo * kmin, 1e-12);
    double env = std::min(0.6, std::sqrt(2.0 / (M_PI * radius * rho_min)));
    out.sup_abs = rho_min < 1.0 ? det * M_PI * radius * radius
                                : det * 2.0 * M_PI * radius * env / rho_min;
    return out;
}

struct ThetaIntegral {
    double value = 0.0;
    double err = 0.0;
};

// Globally adaptive integration of g(theta) over the sector with a coarse
// base mesh; scale anchors the acceptance test to the whole integral.
template <typename G>
ThetaIntegral adaptive_theta(G&& g, double a, double b, int base_intervals, double rel_tol,
                             int max_depth) {
    ThetaIntegral total;
    double scale = 0.0;
    std::vector<double> coarse(base_intervals);
    for (int i = 0; i < base_intervals; ++i) {
        double ia = a + (b - a) * i / base_intervals;
        double ib = a + (b - a) * (i + 1) / base_intervals;
        coarse[i] = gauss_panel(g, ia, ib, 6);
        scale += std::abs(coarse[i]);
    }
    struct Item {
        double a, b, coarse;
        int depth;
    };
    std::vector<Item> stack;
    for (int i = 0; i < base_intervals; ++i)
        stack.push_back({a + (b - a) * i / base_intervals,
                         a + (b - a) * (i + 1) / base_intervals, coarse[i], 0});
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        double m = 0.5 * (it.a + it.b);
        double left = gauss_panel(g, it.a, m, 6);
        double right = gauss_panel(g, m, it.b, 6);
        double fine = left + right;
        double err = std::abs(fine - it.coarse);
        if (err <= rel_tol * std::max(scale, 1e-300) || it.depth >= max_depth) {
            total.value += fine;
            total.err += err;
        } else {
            stack.push_back({it.a, m, left, it.depth + 1});
            stack.push_back({m, it.b, right, it.depth + 1});
        }
    }
    return total;
}

LevelEnergy grid_annulus_energy(const spectra::SpectrumGrid& g, double p, double r_lo,
                                double r_hi) {
    if (r_hi > g.nyquist())
        throw std::out_of_range("dyadic energies: annulus beyond the grid Nyquist frequency");
    LevelEnergy out;
    const double du = g.freq_step();
    const double cell = du * du;
    double acc = 0.0;
    for (int ky = -g.n / 2; ky < g.n / 2; ++ky)
        for (int kx = -g.n / 2; kx < g.n / 2; ++kx) {
            double r = std::hypot(kx * du, ky * du);
            if (r < r_lo || r >= r_hi) continue;
            double a = std::abs(g.value_at(kx, ky));
            out.sup_abs = std::max(out.sup_abs, a);
            acc += std::pow(a, p) * cell;
        }
    out.value = acc;
    // Rasterization error propagated through |.|^p at first order.
    out.err_estimate = acc > 0.0 ? p * g.error_estimate / std::max(g.raster_area, 1e-300) * acc
                                 : 0.0;
    return out;
}

} // namespace

LevelEnergy annulus_energy(const DomainSpec& d, double p, double r_lo, double r_hi,
                           const EnergyOptions& opts) {
    if (!(p > 0.0)) throw std::invalid_argument("annulus_energy: p must be positive");
    if (opts.engine == Engine::Grid) {
        if (!opts.grid) throw std::invalid_argument("annulus_energy: grid engine needs a grid");
        return grid_annulus_energy(*opts.grid, p, r_lo, r_hi);
    }

    // Structure-exploiting reductions where the closed forms separate.
    if (const auto* rect = std::get_if<geometry::RectangleShape>(&d.shape())) {
        if (rect->widths.size() == 2 && r_hi > r_lo)
            return rectangle_annulus_energy(rect->widths, p, r_lo, r_hi);
    }
    if (const auto* aff = std::get_if<geometry::AffineImageShape>(&d.shape())) {
        if (const auto* disk = std::get_if<geometry::DiskShape>(&aff->base->shape()))
            return ellipse_annulus_energy(*aff, disk->radius, p, r_lo, r_hi);
    }

    auto [lo, hi] = d.bounding_box();
    double rmax = std::max({Vec2{lo.x, lo.y}.norm(), Vec2{hi.x, hi.y}.norm(),
                            Vec2{lo.x, hi.y}.norm(), Vec2{hi.x, lo.y}.norm()});
    RadialEvaluator ev{d, opts, rmax};

    LevelEnergy out;
    double sector = symmetry_sector(d);
    if (sector == 0.0) {
        // Radially symmetric: a single ray carries the whole integral.
        double sup = 0.0;
        out.value = 2.0 * M_PI * ev.line(0.0, p, r_lo, r_hi, &sup);
        out.sup_abs = sup;
        out.err_estimate = 1e-9 * out.value;
        return out;
    }

    double sup = 0.0;
    auto g = [&](double theta) { return ev.line(theta, p, r_lo, r_hi, &sup); };
    int base = std::max(8, static_cast<int>(opts.angular_samples * sector / (2.0 * M_PI)));
    ThetaIntegral ti =
        adaptive_theta(g, 0.0, sector, base, opts.theta_rel_tol, opts.max_theta_depth);
    out.value = ti.value * (2.0 * M_PI / sector);
    out.err_estimate = ti.err * (2.0 * M_PI / sector);
    out.sup_abs = sup;
    return out;
}

DyadicEnergyReport dyadic_energies(const DomainSpec& d, double p, int j_lo, int j_hi,
                                   const EnergyOptions& opts) {
    if (j_lo < 0 || j_hi > 14 || j_lo > j_hi)
        throw std::invalid_argument("dyadic_energies: j range must sit in [0, 14]");
    DyadicEnergyReport rep;
    rep.p = p;
    std::vector<double> xs, ys;
    for (int j = j_lo; j <= j_hi; ++j) {
        LevelEnergy le = annulus_energy(d, p, std::ldexp(1.0, j), std::ldexp(1.0, j + 1), opts);
        le.j = j;
        rep.levels.push_back(le);
        if (le.value > 0.0 && le.err_estimate < 0.1 * le.value) {
            rep.used_levels.push_back(j);
            xs.push_back(j);
            ys.push_back(std::log2(le.value));
        }
    }
    if (xs.size() >= 2) {
        LineFit fit = fit_line(xs, ys);
        rep.slope = fit.slope;
        rep.slope_ci = fit.slope_ci;
        rep.slope_residual = fit.residual;
    }
    return rep;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Converges: return "converges";
    case Verdict::Diverges: return "diverges";
    case Verdict::Marginal: return "marginal";
    }
    return "?";
}

VerdictResult membership_verdict(const DyadicEnergyReport& report) {
    if (report.used_levels.size() < 5)
        throw std::invalid_argument("membership_verdict: need >= 5 usable levels");
    VerdictResult res;
    res.slope = report.slope;
    res.slope_ci = report.slope_ci;
    if (report.slope < -0.1 && report.slope_residual < 0.05)
        res.verdict = Verdict::Converges;
    else if (report.slope > 0.1)
        res.verdict = Verdict::Diverges;
    else
        res.verdict = Verdict::Marginal;
    return res;
}

CriticalExponent critical_exponent_estimate(const DomainSpec& d, double p_lo, double p_hi,
                                            int j_lo, int j_hi, const EnergyOptions& opts) {
    auto slope_at = [&](double p) { return dyadic_energies(d, p, j_lo, j_hi, opts).slope; };
    double s_lo = slope_at(p_lo), s_hi = slope_at(p_hi);
    if (!(s_lo > 0.0 && s_hi < 0.0))
        throw std::invalid_argument(
            "critical_exponent_estimate: fitted slope does not change sign on the bracket");
    double a = p_lo, b = p_hi, sa = s_lo;
    for (int it = 0; it < 18 && (b - a) > 1e-4; ++it) {
        double m = 0.5 * (a + b);
        double sm = slope_at(m);
        if ((sm > 0.0) == (sa > 0.0)) {
            a = m;
            sa = sm;
        } else {
            b = m;
        }
    }
    CriticalExponent ce;
    ce.p_star = 0.5 * (a + b);
    // Residual-driven uncertainty: slope noise divided by d(slope)/dp.
    DyadicEnergyReport at = dyadic_energies(d, ce.p_star, j_lo, j_hi, opts);
    double dslope = (s_hi - s_lo) / (p_hi - p_lo);
    ce.uncertainty = std::abs(dslope) > 1e-12
                         ? std::abs((at.slope_ci + at.slope_residual) / dslope)
                         : (b - a);
    ce.uncertainty = std::max(ce.uncertainty, 0.5 * (b - a));
    return ce;
}

std::pair<double, double> parseval_anchor(const DomainSpec& d, int j_hi,
                                          const EnergyOptions& opts) {
    double acc = annulus_energy(d, 2.0, 0.0, 1.0, opts).value;
    for (int j = 0; j <= j_hi; ++j)
        acc += annulus_energy(d, 2.0, std::ldexp(1.0, j), std::ldexp(1.0, j + 1), opts).value;
    return {acc, spectra::parseval_factor(2) * d.area()};
}

void write_report_csv(std::ostream& os, const DyadicEnergyReport& r) {
    os << "j,S_j,err\n";
    char buf[120];
    for (const LevelEnergy& le : r.levels) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", le.j, le.value, le.err_estimate);
        os << buf;
    }
}

} // namespace indicatrix::integrability
