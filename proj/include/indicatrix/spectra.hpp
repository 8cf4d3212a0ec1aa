#ifndef INDICATRIX_SPECTRA_HPP
#define INDICATRIX_SPECTRA_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "indicatrix/domain.hpp"

namespace indicatrix::spectra {

using geometry::DomainSpec;
using geometry::Profile;

// Convention fixed project-wide: fhat(u) = int f(t) e^{-i(u,t)} dt, so
// Parseval reads int |fhat|^2 = (2pi)^n int |f|^2.
inline constexpr const char* kConvention = "e^{-i(u,t)}";
inline double parseval_factor(int n) { return std::pow(2.0 * M_PI, n); }

enum class Engine { Closed, Boundary, Grid, Lemma1 };

Engine engine_from_name(const std::string& name);
const char* engine_name(Engine e);

// Closed forms: rectangles in any dimension (product of 1-D factors), disks
// via 2 pi r J1(r|xi|)/|xi|, and affine images of either through the
// substitution identity.
std::complex<double> closed_form(const DomainSpec& d, const std::vector<double>& xi);
std::complex<double> closed_form(const DomainSpec& d, Vec2 xi);

// Divergence-theorem reduction (i/|xi|^2) contour integral of
// e^{-i(xi,x)} (xi, nu(x)); exact per-edge on polygons, oscillation-aware
// panels on curved boundaries. xi = 0 falls back to the area.
std::complex<double> boundary_integral(const DomainSpec& d, Vec2 xi, int quad_order = 16);

// Cell-center rasterization + FFT. Frequencies u_k = 2 pi k/(n h),
// k in [-n/2, n/2) per axis.
struct SpectrumGrid {
    int n = 0;
    Vec2 box_lo, box_hi;
    double cell = 0.0;
    double raster_area = 0.0;   // cell count x cell area; equals the DC value
    double error_estimate = 0.0; // one cell area per boundary-straddling cell
    std::string convention = kConvention;
    std::vector<std::complex<double>> values; // row-major FFT layout

    double freq_step() const { return 2.0 * M_PI / (n * cell); }
    double nyquist() const { return M_PI / cell; }
    // kx, ky in [-n/2, n/2)
    std::complex<double> value_at(int kx, int ky) const;
    Vec2 freq_at(int kx, int ky) const { return {kx * freq_step(), ky * freq_step()}; }
};

SpectrumGrid grid_transform(const DomainSpec& d, int n, Vec2 box_lo, Vec2 box_hi);

// Lemma-1 route for special domains: hat(1_G)(u, lambda) as the 1-D
// transform of F_lambda(t) = (e^{-i lambda phi(t)} - 1)/(-i lambda);
// lambda = 0 uses the analytic limit F_0 = phi.
std::complex<double> lemma1_transform(const DomainSpec& special, double u, double lambda,
                                      int quad_order = 16);

// F_lambda evaluated pointwise (exposed for the slice checks).
std::complex<double> lambda_slice(const Profile& phi, double t, double lambda);

// Engine dispatch for 2-D pointwise values; throws EngineMismatchError when
// the engine does not support the shape.
std::complex<double> transform_value(const DomainSpec& d, Vec2 xi, Engine engine,
                                     int quad_order = 16);
std::vector<Engine> pointwise_engines(const DomainSpec& d);

void write_spectrum_csv(std::ostream& os, const SpectrumGrid& g, double max_abs_freq);
// Little-endian doubles, row-major (re, im) pairs, after a one-line JSON
// header with shape, convention and box.
void write_spectrum_binary(std::ostream& os, const SpectrumGrid& g);

} // namespace indicatrix::spectra

#endif
