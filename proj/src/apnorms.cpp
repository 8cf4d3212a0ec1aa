#include "indicatrix/apnorms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>

#include "indicatrix/errors.hpp"
#include "indicatrix/fft.hpp"
#include "indicatrix/quadrature.hpp"

namespace indicatrix::apnorms {

using geometry::Profile;
using complexd = std::complex<double>;

CircleNorm circle_ap_norm(const Profile& phi, double lambda, double p, int cutoff,
                          bool subtract_one) {
    if (!phi.periodic()) throw std::invalid_argument("circle_ap_norm: profile must be periodic");
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("circle_ap_norm: p in [1, 2]");
    if (cutoff < concentration_cutoff(phi, lambda))
        throw std::invalid_argument("circle_ap_norm: cutoff below 4(|lambda| max|phi'| + 1)");

    const std::size_t n = next_pow2(static_cast<std::size_t>(8) * cutoff);
    std::vector<complexd> samples(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        samples[j] = std::exp(complexd{0.0, lambda * phi(t)});
    }
    fft_inplace(samples, -1);

    CircleNorm out;
    out.cutoff = cutoff;
    out.fft_size = n;
    double sum_p = 0.0, tail2 = 0.0;
    const auto half = static_cast<std::int64_t>(n / 2);
    for (std::int64_t k = -half; k < half; ++k) {
        complexd c = samples[static_cast<std::size_t>((k + static_cast<std::int64_t>(n)) % n)] /
                     static_cast<double>(n);
        if (subtract_one && k == 0) c -= 1.0;
        if (std::abs(k) <= cutoff)
            sum_p += std::pow(std::abs(c), p);
        else
            tail2 += std::norm(c);
    }
    out.tail_energy = tail2;
    if (tail2 > 1e-8)
        throw AccuracyError("circle_ap_norm: cutoff too small for the requested accuracy",
                            tail2);
    out.norm = std::pow(sum_p, 1.0 / p);
    return out;
}

NormCurve growth_fit(const Profile& phi, double p, const std::vector<double>& ladder) {
    if (ladder.size() < 8) throw std::invalid_argument("growth_fit: need >= 8 ladder points");
    auto [lo, hi] = std::minmax_element(ladder.begin(), ladder.end());
    if (*hi / *lo < 1e2 * (1.0 - 1e-9))
        throw std::invalid_argument("growth_fit: ladder must span >= 2 decades");

    NormCurve curve;
    curve.p = p;
    std::vector<double> lx, ly;
    const double fit_floor = *lo * 10.0; // smallest decade is preasymptotic
    for (double lambda : ladder) {
        CircleNorm cn = circle_ap_norm(phi, lambda, p, concentration_cutoff(phi, lambda));
        curve.lambdas.push_back(lambda);
        curve.norms.push_back(cn.norm);
        if (lambda >= fit_floor * (1.0 - 1e-9)) {
            lx.push_back(std::log(lambda));
            ly.push_back(std::log(cn.norm));
        }
    }
    if (lx.size() < 2) throw std::invalid_argument("growth_fit: too few points above a decade");
    LineFit fit = fit_line(lx, ly);
    curve.slope = fit.slope;
    curve.slope_ci = fit.slope_ci;
    curve.residual = fit.residual;
    curve.fit_points = lx.size();
    return curve;
}

double bound4_exponent(const moduli::ChiMap& chi, double p) {
    if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("bound4_exponent: p in (1, 2)");
    std::vector<double> lx, ly;
    for (int k = 8; k <= 20; ++k) {
        double lambda = std::exp2(k);
        lx.push_back(std::log(lambda));
        ly.push_back(std::log(chi.inverse(1.0 / lambda)));
    }
    double inv_exponent = fit_line(lx, ly).slope; // chi^{-1}(1/l) ~ l^{inv_exponent}
    return 1.0 / p + inv_exponent;
}

double line_restriction_norm(const Profile& phi, double lambda, double p, double band_factor) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("line_restriction_norm: p in (1, 2]");
    if (lambda == 0.0) return 0.0;

    const double c = phi.c(), b = phi.b(), len = b - c;
    const double band = band_factor * (std::abs(lambda) * phi.max_abs_deriv() + 1.0);
    // Sample spacing resolves the band; zero padding x8 resolves the
    // spectrum's 1/len-scale variation.
    double h = M_PI / band;
    if (phi.finest_scale() > 0.0) h = std::min(h, phi.finest_scale() / 4.0);
    std::size_t m = next_pow2(static_cast<std::size_t>(std::ceil(len / h)) * 8);
    h = len * 8.0 / static_cast<double>(m); // keep the x8 padding exact

    std::vector<complexd> samples(m, complexd{0.0, 0.0});
    const auto support = static_cast<std::size_t>(std::floor(len / h));
    for (std::size_t j = 0; j <= support; ++j) {
        double t = c + static_cast<double>(j) * h;
        if (t > b) break;
        complexd v = std::exp(complexd{0.0, lambda * phi(t)}) - 1.0;
        // Trapezoid end weights tame the jump at t = b.
        if (j == 0 || j == support) v *= 0.5;
        samples[j] = v;
    }
    fft_inplace(samples, -1);

    // F_hat(u_k) ~ h e^{-i u_k c} FFT_k, u_k = 2 pi k/(m h); |.| drops the
    // phase. Trapezoid in frequency over the full band.
    const double du = 2.0 * M_PI / (static_cast<double>(m) * h);
    double acc = 0.0;
    const auto half = static_cast<std::int64_t>(m / 2);
    for (std::int64_t k = -half; k < half; ++k) {
        double a = h * std::abs(samples[static_cast<std::size_t>(
                       (k + static_cast<std::int64_t>(m)) % m)]);
        acc += std::pow(a, p) * du;
    }

    // Analytic endpoint-jump tail: F_hat(u) ~ (F(b)e^{-iub} - F(c)e^{-iuc})/(iu),
    // averaged in phase over the beat.
    const double u_max = M_PI / h;
    complexd fb = std::exp(complexd{0.0, lambda * phi(b)}) - 1.0;
    complexd fc = std::exp(complexd{0.0, lambda * phi(c)}) - 1.0;
    double avg = 0.0;
    const int beat = 64;
    for (int i = 0; i < beat; ++i) {
        double th = 2.0 * M_PI * (i + 0.5) / beat;
        avg += std::pow(std::abs(fb - fc * std::exp(complexd{0.0, th})), p);
    }
    avg /= beat;
    acc += 2.0 * avg * std::pow(u_max, 1.0 - p) / (p - 1.0);

    return std::pow(acc, 1.0 / p);
}

IntegrandScan lemma1_integrand_scan(const Profile& phi, double p,
                                    const std::vector<double>& ladder) {
    if (ladder.size() < 4) throw std::invalid_argument("lemma1_integrand_scan: short ladder");
    IntegrandScan scan;
    scan.p = p;
    for (double lambda : ladder) {
        double norm = line_restriction_norm(phi, lambda, p);
        scan.lambdas.push_back(lambda);
        scan.values.push_back(std::pow(std::abs(lambda), -p) * std::pow(norm, p));
    }
    for (std::size_t i = 0; i + 1 < scan.lambdas.size(); ++i)
        scan.truncated_integral += 0.5 * (scan.values[i] + scan.values[i + 1]) *
                                   (scan.lambdas[i + 1] - scan.lambdas[i]);

    // Fit the integrand exponent on the top half of the ladder.
    std::vector<double> lx, ly;
    for (std::size_t i = scan.lambdas.size() / 2; i < scan.lambdas.size(); ++i) {
        lx.push_back(std::log(scan.lambdas[i]));
        ly.push_back(std::log(std::max(scan.values[i], 1e-300)));
    }
    scan.fitted_exponent = fit_line(lx, ly).slope;
    if (scan.fitted_exponent < -1.0 - 1e-6) {
        double lmax = scan.lambdas.back();
        scan.tail_estimate =
            scan.values.back() * lmax / (-1.0 - scan.fitted_exponent);
        scan.verdict = ScanVerdict::Converges;
    } else {
        scan.tail_estimate = std::numeric_limits<double>::infinity();
        scan.verdict = ScanVerdict::Diverges;
    }
    return scan;
}

void write_norm_curve_csv(std::ostream& os, const NormCurve& c) {
    os << "lambda,norm,p\n";
    char buf[120];
    for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", c.lambdas[i], c.norms[i], c.p);
        os << buf;
    }
}

} // namespace indicatrix::apnorms
