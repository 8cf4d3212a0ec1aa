#include "indicatrix/sobolev.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "indicatrix/errors.hpp"
#include "indicatrix/geometry.hpp"
#include "indicatrix/quadrature.hpp"
#include "indicatrix/rng.hpp"

namespace indicatrix::sobolev {

using geometry::DomainSpec;

SigmaTable build_sigma_table(const DomainSpec& d, double r_min, double r_max,
                             std::uint64_t budget, std::uint64_t seed, int angles,
                             int nodes_per_octave) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw std::invalid_argument("build_sigma_table: need 0 < r_min < r_max");
    SigmaTable table;
    table.r_min = r_min;
    table.r_max = r_max;
    table.area = d.area();

    const GaussRule& rule = gauss_rule(nodes_per_octave);
    const double lmin = std::log(r_min), lmax = std::log(r_max);
    const int octaves = static_cast<int>(std::ceil((lmax - lmin) / std::log(2.0)));
    for (int oct = 0; oct < octaves; ++oct) {
        double la = lmin + oct * std::log(2.0);
        double lb = std::min(lmax, la + std::log(2.0));
        double mid = 0.5 * (la + lb), half = 0.5 * (lb - la);
        for (int i = 0; i < nodes_per_octave; ++i) {
            double lr = mid + half * rule.nodes[i];
            double r = std::exp(lr);
            double sum = 0.0, se2 = 0.0;
            for (int a = 0; a < angles; ++a) {
                double th = (a + 0.5) * 2.0 * M_PI / angles;
                Vec2 t{r * std::cos(th), r * std::sin(th)};
                auto est = geometry::symmetric_difference_measure(
                    d, t, budget, derive_seed(seed, oct * 4096 + i, a));
                sum += est.value;
                se2 += est.std_error * est.std_error;
            }
            table.radii.push_back(r);
            // d r = r d(log r)
            table.weights.push_back(rule.weights[i] * half * r);
            table.sigma.push_back(sum / angles);
            table.sigma_se.push_back(std::sqrt(se2) / angles);
        }
    }
    return table;
}

double truncated_difference_integral(const SigmaTable& table, double s, double eps) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("difference integral: s must be in (0, 1)");
    if (eps < table.r_min * (1.0 - 1e-12))
        throw std::invalid_argument("difference integral: eps below the table range");
    double acc = 0.0;
    for (std::size_t i = 0; i < table.radii.size(); ++i) {
        double r = table.radii[i];
        if (r < eps) continue;
        acc += table.weights[i] * std::pow(r, -1.0 - 2.0 * s) * 2.0 * M_PI * table.sigma[i];
    }
    // Beyond r_max the translates are disjoint: sigma = 2|D| exactly.
    acc += 2.0 * table.area * 2.0 * M_PI * std::pow(table.r_max, -2.0 * s) / (2.0 * s);
    return acc;
}

double difference_integral(const DomainSpec& d, double s, double eps, double t_max,
                           std::uint64_t budget, std::uint64_t seed) {
    if (!(eps > 0.0) || !(t_max > eps))
        throw std::invalid_argument("difference_integral: need 0 < eps < T");
    SigmaTable table = build_sigma_table(d, eps, t_max, budget, seed);
    return truncated_difference_integral(table, s, eps);
}

namespace {

bool ladder_divergent(const std::vector<double>& ladder) {
    // ladder[k] = N at eps = 2^-(k_lo + k), increasing in k.
    const std::size_t n = ladder.size();
    if (n < 4) throw std::invalid_argument("ladder_divergent: need >= 4 rungs");
    std::vector<double> inc;
    for (std::size_t k = 0; k + 1 < n; ++k) inc.push_back(ladder[k + 1] - ladder[k]);
    // Converged ladders have vanishing increments regardless of ratio noise.
    if (inc.back() < 1e-3 * ladder.back()) return false;
    double ratio_sum = 0.0;
    int count = 0;
    for (std::size_t k = inc.size() >= 3 ? inc.size() - 3 : 0; k + 1 < inc.size(); ++k) {
        if (inc[k] > 0.0) {
            ratio_sum += inc[k + 1] / inc[k];
            ++count;
        }
    }
    if (count == 0) return false;
    return ratio_sum / count >= std::exp2(-0.05);
}

} // namespace

SobolevReport sobolev_membership_sweep(const DomainSpec& d, const std::vector<double>& s_grid,
                                       std::uint64_t budget, std::uint64_t seed, int k_lo,
                                       int k_hi) {
    if (s_grid.empty()) throw std::invalid_argument("sobolev sweep: empty s grid");
    for (double s : s_grid)
        if (!(s > 0.0 && s < 1.0))
            throw std::invalid_argument("sobolev sweep: s grid must sit in (0, 1)");
    if (k_lo < 1 || k_hi <= k_lo) throw std::invalid_argument("sobolev sweep: bad k range");

    SobolevReport rep;
    rep.s_values = s_grid;
    rep.k_lo = k_lo;
    rep.k_hi = k_hi;
    rep.l2_term = d.area();

    const double t_max = d.diameter_bound() + 1.0;
    SigmaTable table =
        build_sigma_table(d, std::exp2(-static_cast<double>(k_hi) - 1.0), t_max, budget, seed);

    for (double s : s_grid) {
        std::vector<double> ladder;
        for (int k = k_lo; k <= k_hi; ++k)
            ladder.push_back(truncated_difference_integral(table, s, std::exp2(-k)));
        rep.divergent.push_back(ladder_divergent(ladder));
        rep.ladders.push_back(std::move(ladder));
    }

    // Classification flip, assuming divergence is monotone in s.
    rep.s_hat = rep.s_values.back();
    for (std::size_t i = 0; i < rep.s_values.size(); ++i) {
        if (rep.divergent[i]) {
            rep.s_hat = i == 0 ? rep.s_values[0]
                               : 0.5 * (rep.s_values[i - 1] + rep.s_values[i]);
            break;
        }
    }
    return rep;
}

double remark1_bound(double a, int n) {
    if (n < 1) throw std::invalid_argument("remark1_bound: n >= 1 required");
    if (!(a >= n - 1.0 && a <= static_cast<double>(n)))
        throw std::invalid_argument("remark1_bound: dimension must sit in [n-1, n]");
    return 2.0 * n / (2.0 * n - a);
}

void write_sobolev_csv(std::ostream& os, const SobolevReport& r) {
    os << "s,eps,N\n";
    char buf[120];
    for (std::size_t i = 0; i < r.s_values.size(); ++i)
        for (std::size_t k = 0; k < r.ladders[i].size(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", r.s_values[i],
                          std::exp2(-static_cast<double>(r.k_lo + k)), r.ladders[i][k]);
            os << buf;
        }
}

} // namespace indicatrix::sobolev
