#ifndef INDICATRIX_GEOMETRY_HPP
#define INDICATRIX_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "indicatrix/boundary.hpp"
#include "indicatrix/domain.hpp"

namespace indicatrix::geometry {

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// |((D-t)\D) u (D\(D-t))| by stratified (jittered-grid) sampling over the
// union bounding box; deterministic for a fixed seed.
MonteCarloEstimate symmetric_difference_measure(const DomainSpec& d, Vec2 t,
                                                std::uint64_t budget, std::uint64_t seed);

inline double symmetric_difference(const DomainSpec& d, Vec2 t, std::uint64_t budget,
                                   std::uint64_t seed) {
    return symmetric_difference_measure(d, t, budget, seed).value;
}

// Area of the delta-neighborhood of a curve by cell counting with exact
// point-to-segment distances. cell_size must be <= delta/4.
double neighborhood_area(const std::vector<Vec2>& polyline, bool closed, double delta,
                         double cell_size);
double neighborhood_area(const DomainSpec& d, double delta, double cell_size);

// n - slope of log |(F)_delta| vs log delta over the given ladder, clamped
// to [n-1, n]. Needs >= 3 decades of delta and >= 3 usable levels.
struct MinkowskiEstimate {
    double dimension = 0.0;
    double slope_residual = 0.0;
    std::vector<std::pair<double, double>> areas; // (delta, |(F)_delta|)
};
MinkowskiEstimate minkowski_dimension(const std::vector<Vec2>& polyline, bool closed,
                                      const std::vector<double>& deltas);
MinkowskiEstimate minkowski_dimension(const DomainSpec& d, const std::vector<double>& deltas);

// Geometrically spaced ladder covering [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int count);

// Wrapper yielding the image domain l(D) = Q D + shift.
DomainSpec affine_image(const DomainSpec& d, Mat2 q, Vec2 shift);

} // namespace indicatrix::geometry

#endif
