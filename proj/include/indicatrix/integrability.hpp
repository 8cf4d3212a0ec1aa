#ifndef INDICATRIX_INTEGRABILITY_HPP
#define INDICATRIX_INTEGRABILITY_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "indicatrix/spectra.hpp"

namespace indicatrix::integrability {

struct EnergyOptions {
    spectra::Engine engine = spectra::Engine::Closed;
    int angular_samples = 512; // base angular mesh on the full circle
    int radial_order = 8;
    double theta_rel_tol = 3e-4;
    int max_theta_depth = 26;
    int quad_order = 16;             // boundary-engine contour order
    const spectra::SpectrumGrid* grid = nullptr; // required for Engine::Grid
};

struct LevelEnergy {
    int j = 0;
    double value = 0.0;
    double err_estimate = 0.0;
    double sup_abs = 0.0; // max |fhat| seen on the annulus nodes
};

struct DyadicEnergyReport {
    double p = 0.0;
    std::vector<LevelEnergy> levels;
    std::vector<int> used_levels; // quadrature error < 10% of S_j
    double slope = 0.0;           // fitted log2 S_j vs j
    double slope_ci = 0.0;
    double slope_residual = 0.0;
};

// S over the annulus r_lo <= |xi| < r_hi of |fhat|^p.
LevelEnergy annulus_energy(const geometry::DomainSpec& d, double p, double r_lo, double r_hi,
                           const EnergyOptions& opts);

// S_j(p) over 2^j <= |xi| < 2^{j+1} for j in [j_lo, j_hi] plus the decay
// slope; j range must sit in [0, 14].
DyadicEnergyReport dyadic_energies(const geometry::DomainSpec& d, double p, int j_lo, int j_hi,
                                   const EnergyOptions& opts = {});

enum class Verdict { Converges, Diverges, Marginal };
const char* verdict_name(Verdict v);

struct VerdictResult {
    Verdict verdict = Verdict::Marginal;
    double slope = 0.0;
    double slope_ci = 0.0;
};

// Slope thresholds +-0.1 with the 0.05 residual gate; marginal verdicts
// are never upgraded.
VerdictResult membership_verdict(const DyadicEnergyReport& report);

struct CriticalExponent {
    double p_star = 0.0;
    double uncertainty = 0.0;
};

// Bisection on the fitted slope over [p_lo, p_hi]; requires a sign change.
CriticalExponent critical_exponent_estimate(const geometry::DomainSpec& d, double p_lo,
                                            double p_hi, int j_lo, int j_hi,
                                            const EnergyOptions& opts = {});

// (low-ball energy + sum of S_j(2) up to j_hi, (2pi)^2 area).
std::pair<double, double> parseval_anchor(const geometry::DomainSpec& d, int j_hi,
                                          const EnergyOptions& opts = {});

void write_report_csv(std::ostream& os, const DyadicEnergyReport& r);

} // namespace indicatrix::integrability

#endif
