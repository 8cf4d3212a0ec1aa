#ifndef INDICATRIX_SOBOLEV_HPP
#define INDICATRIX_SOBOLEV_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "indicatrix/domain.hpp"

namespace indicatrix::sobolev {

// Angular averages of the symmetric-difference measure sigma_d(t) on
// log-radial Gauss nodes; sigma does not depend on s, so one table serves
// the whole (s, eps) sweep.
struct SigmaTable {
    double r_min = 0.0, r_max = 0.0;
    std::vector<double> radii;
    std::vector<double> weights; // sum w_i f(r_i) ~ int_{r_min}^{r_max} f dr
    std::vector<double> sigma;   // angular mean over the circle |t| = r
    std::vector<double> sigma_se;
    double area = 0.0;
};

SigmaTable build_sigma_table(const geometry::DomainSpec& d, double r_min, double r_max,
                             std::uint64_t budget, std::uint64_t seed, int angles = 16,
                             int nodes_per_octave = 6);

// N(s, eps) = int_{eps<=|t|<=T} |t|^{-n-2s} sigma_d(t) dt (n = 2) from the
// table, with the closed 2|D| tail appended beyond r_max.
double truncated_difference_integral(const SigmaTable& table, double s, double eps);

// One-shot form of the same integral (builds a private table).
double difference_integral(const geometry::DomainSpec& d, double s, double eps, double t_max,
                           std::uint64_t budget, std::uint64_t seed);

struct SobolevReport {
    std::vector<double> s_values;
    double l2_term = 0.0; // |D|, the indicator's squared L2 norm
    int k_lo = 4, k_hi = 12;
    // ladders[i][k] = N(s_i, 2^-(k_lo+k))
    std::vector<std::vector<double>> ladders;
    std::vector<bool> divergent;
    double s_hat = 0.0;
};

// Divergence of the eps-ladder: flat or growing octave increments (mean
// last-three ratio >= 2^-0.05) flag s as divergent; s_hat is the midpoint
// of the classification flip.
SobolevReport sobolev_membership_sweep(const geometry::DomainSpec& d,
                                       const std::vector<double>& s_grid, std::uint64_t budget,
                                       std::uint64_t seed, int k_lo = 4, int k_hi = 12);

// Remark-1 exponent 2n/(2n - a) for a boundary of upper Minkowski
// dimension a in [n-1, n].
double remark1_bound(double a, int n);

void write_sobolev_csv(std::ostream& os, const SobolevReport& r);

} // namespace indicatrix::sobolev

#endif
