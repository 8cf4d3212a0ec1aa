#ifndef INDICATRIX_BOUNDARY_HPP
#define INDICATRIX_BOUNDARY_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "indicatrix/domain.hpp"
#include "indicatrix/vec2.hpp"

namespace indicatrix::geometry {

// Ordered boundary walk: points with cumulative arc-length parameters and
// outward unit normals, counterclockwise.
struct BoundarySampling {
    std::vector<double> arc;
    std::vector<Vec2> points;
    std::vector<Vec2> normals;
    bool closed = true;

    std::size_t size() const { return points.size(); }
    double total_arc() const { return arc.empty() ? 0.0 : arc.back(); }
};

// Consecutive samples sit within `step` of each other along the boundary.
// Special-domain graphs use nu = (-phi', 1)/sqrt(1+phi'^2).
BoundarySampling sample_boundary(const DomainSpec& d, double step);

// Measured modulus of the normal map: for each delta, the max of
// |nu(x) - nu(y)| over sampled pairs with |x - y| <= delta. Pairs are found
// through a spatial hash, so all pairs within range are considered.
std::vector<std::pair<double, double>> normal_modulus(const BoundarySampling& bs,
                                                      const std::vector<double>& delta_grid);

// Resamples the boundary at step delta/8 per level and fits the log-log
// slope of the measured modulus; used for the C^{1,w} exponent checks.
struct NormalModulusFit {
    std::vector<std::pair<double, double>> measured;
    double exponent = 0.0;
    double residual = 0.0;
};
NormalModulusFit normal_modulus_fit(const DomainSpec& d, const std::vector<double>& deltas);

// CSV rows: s, x, y, nx, ny.
void write_boundary_csv(std::ostream& os, const BoundarySampling& bs);

} // namespace indicatrix::geometry

#endif
