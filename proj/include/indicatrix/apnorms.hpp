#ifndef INDICATRIX_APNORMS_HPP
#define INDICATRIX_APNORMS_HPP

#include <iosfwd>
#include <vector>

#include "indicatrix/profile.hpp"

namespace indicatrix::apnorms {

struct CircleNorm {
    double norm = 0.0;
    double tail_energy = 0.0; // ell^2 mass beyond the cutoff
    int cutoff = 0;
    std::size_t fft_size = 0;
};

// ||e^{i lambda phi}||_{A_p(T)} = (sum_{|k|<=K} |fhat(k)|^p)^{1/p} with
// coefficients from a 2^ceil(log2(8K))-point transform. subtract_one
// computes the norm of e^{i lambda phi} - 1 instead. Requires the spectral
// concentration cutoff K >= 4 (|lambda| max|phi'| + 1); reports the ell^2
// tail and throws AccuracyError when it exceeds 1e-8.
CircleNorm circle_ap_norm(const geometry::Profile& phi, double lambda, double p, int cutoff,
                          bool subtract_one = false);

inline int concentration_cutoff(const geometry::Profile& phi, double lambda) {
    return static_cast<int>(std::ceil(4.0 * (std::abs(lambda) * phi.max_abs_deriv() + 1.0)));
}

struct NormCurve {
    double p = 0.0;
    std::vector<double> lambdas;
    std::vector<double> norms;
    double slope = 0.0; // log-log fit, smallest decade excluded
    double slope_ci = 0.0;
    double residual = 0.0;
    std::size_t fit_points = 0;
};

// Norm growth along a geometric lambda ladder (>= 8 points over >= 2
// decades); the smallest decade is preasymptotic and excluded from the fit.
NormCurve growth_fit(const geometry::Profile& phi, double p,
                     const std::vector<double>& ladder);

// Lower-bound exponent of estimate (4) with m = 1: 1/p minus the small-
// argument exponent of chi^{-1}, evaluated by a log-log fit near zero.
double bound4_exponent(const moduli::ChiMap& chi, double p);

// ||(e^{i lambda phi} - 1)*||_{A_p(R)}: transform of the zero-extension off
// [c, b], integrated over a truncated band plus the analytic |u|^{-p}
// endpoint-jump tail.
double line_restriction_norm(const geometry::Profile& phi, double lambda, double p,
                             double band_factor = 64.0);

enum class ScanVerdict { Converges, Diverges };

struct IntegrandScan {
    double p = 0.0;
    std::vector<double> lambdas;
    std::vector<double> values; // lambda^{-p} ||e^{i lambda phi} - 1||^p
    double truncated_integral = 0.0;
    double fitted_exponent = 0.0; // of the integrand at large lambda
    double tail_estimate = 0.0;
    ScanVerdict verdict = ScanVerdict::Diverges;
};

// Lemma-1 integrand along the ladder, trapezoid truncation plus a
// monotone-tail extrapolation from the fitted exponent.
IntegrandScan lemma1_integrand_scan(const geometry::Profile& phi, double p,
                                    const std::vector<double>& ladder);

void write_norm_curve_csv(std::ostream& os, const NormCurve& c);

} // namespace indicatrix::apnorms

#endif
