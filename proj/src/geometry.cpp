#include "indicatrix/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "indicatrix/errors.hpp"
#include "indicatrix/quadrature.hpp"
#include "indicatrix/rng.hpp"

namespace indicatrix::geometry {

MonteCarloEstimate symmetric_difference_measure(const DomainSpec& d, Vec2 t,
                                                std::uint64_t budget, std::uint64_t seed) {
    if (d.dim() != 2)
        throw EngineMismatchError("symmetric_difference_measure: 2-D domains only");
    if (budget < 10000)
        throw std::invalid_argument("symmetric_difference_measure: budget >= 1e4 required");
    if (!std::isfinite(t.x) || !std::isfinite(t.y))
        throw std::invalid_argument("symmetric_difference_measure: shift must be finite");

    auto [lo, hi] = d.bounding_box();
    // Support of |1_D(x) - 1_D(x + t)| lies in bbox(D) u (bbox(D) - t).
    Vec2 ulo{std::min(lo.x, lo.x - t.x), std::min(lo.y, lo.y - t.y)};
    Vec2 uhi{std::max(hi.x, hi.x - t.x), std::max(hi.y, hi.y - t.y)};
    const double bw = uhi.x - ulo.x, bh = uhi.y - ulo.y;
    const double box_area = bw * bh;

    const auto grid = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(budget)));
    const std::uint64_t n = grid * grid;
    std::uint64_t hits = 0;
    SplitMix64 rng(derive_seed(seed, 0x5ca1ab1e));
    for (std::uint64_t gy = 0; gy < grid; ++gy) {
        for (std::uint64_t gx = 0; gx < grid; ++gx) {
            double x = ulo.x + bw * (gx + rng.next_double()) / grid;
            double y = ulo.y + bh * (gy + rng.next_double()) / grid;
            bool in0 = d.contains({x, y});
            bool in1 = d.contains({x + t.x, y + t.y});
            hits += (in0 != in1) ? 1 : 0;
        }
    }
    MonteCarloEstimate est;
    est.samples = n;
    double p = static_cast<double>(hits) / static_cast<double>(n);
    est.value = box_area * p;
    // Binomial bound; jittered strata only do better.
    est.std_error = box_area * std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / static_cast<double>(n));
    return est;
}

namespace {

double tube_area(const std::vector<Vec2>& polyline, bool closed, double delta,
                 double cell_size) {
    if (!(delta > 0.0)) throw std::invalid_argument("neighborhood_area: delta must be positive");
    if (!(cell_size > 0.0) || cell_size > delta / 4.0 * (1.0 + 1e-12))
        throw std::invalid_argument("neighborhood_area: cell size must be <= delta/4");
    if (polyline.size() < 2) throw std::invalid_argument("neighborhood_area: degenerate curve");

    std::unordered_set<std::int64_t> marked;
    const double pad = delta + cell_size;
    const std::size_t nseg = polyline.size() - (closed ? 0 : 1);
    for (std::size_t s = 0; s < nseg; ++s) {
        Vec2 a = polyline[s];
        Vec2 b = polyline[(s + 1) % polyline.size()];
        auto ix0 = static_cast<std::int64_t>(std::floor((std::min(a.x, b.x) - pad) / cell_size));
        auto ix1 = static_cast<std::int64_t>(std::floor((std::max(a.x, b.x) + pad) / cell_size));
        auto iy0 = static_cast<std::int64_t>(std::floor((std::min(a.y, b.y) - pad) / cell_size));
        auto iy1 = static_cast<std::int64_t>(std::floor((std::max(a.y, b.y) + pad) / cell_size));
        for (std::int64_t iy = iy0; iy <= iy1; ++iy) {
            for (std::int64_t ix = ix0; ix <= ix1; ++ix) {
                Vec2 center{(ix + 0.5) * cell_size, (iy + 0.5) * cell_size};
                if (point_segment_distance(center, a, b) <= delta)
                    marked.insert((ix << 32) ^ (iy & 0xffffffffLL));
            }
        }
    }
    return static_cast<double>(marked.size()) * cell_size * cell_size;
}

std::vector<Vec2> boundary_polyline(const DomainSpec& d, double step) {
    BoundarySampling bs = sample_boundary(d, step);
    return bs.points;
}

} // namespace

double neighborhood_area(const std::vector<Vec2>& polyline, bool closed, double delta,
                         double cell_size) {
    return tube_area(polyline, closed, delta, cell_size);
}

double neighborhood_area(const DomainSpec& d, double delta, double cell_size) {
    // Polylines sampled at half a cell keep the discretization below the
    // counting resolution.
    if (const auto* poly = std::get_if<PolygonShape>(&d.shape()))
        return tube_area(poly->vertices, true, delta, cell_size);
    return tube_area(boundary_polyline(d, cell_size * 0.5), true, delta, cell_size);
}

MinkowskiEstimate minkowski_dimension(const std::vector<Vec2>& polyline, bool closed,
                                      const std::vector<double>& deltas) {
    if (deltas.size() < 3)
        throw std::invalid_argument("minkowski_dimension: need >= 3 delta values");
    auto [dmin, dmax] = std::minmax_element(deltas.begin(), deltas.end());
    if (*dmax / *dmin < 1e3 * (1.0 - 1e-9))
        throw std::invalid_argument("minkowski_dimension: need >= 3 decades of delta");

    MinkowskiEstimate est;
    std::vector<double> lx, ly;
    for (double delta : deltas) {
        double area = tube_area(polyline, closed, delta, delta / 8.0);
        est.areas.emplace_back(delta, area);
        lx.push_back(std::log(delta));
        ly.push_back(std::log(area));
    }
    LineFit fit = fit_line(lx, ly);
    est.dimension = std::clamp(2.0 - fit.slope, 1.0, 2.0);
    est.slope_residual = fit.residual;
    return est;
}

MinkowskiEstimate minkowski_dimension(const DomainSpec& d, const std::vector<double>& deltas) {
    if (const auto* poly = std::get_if<PolygonShape>(&d.shape()))
        return minkowski_dimension(poly->vertices, true, deltas);
    double finest = *std::min_element(deltas.begin(), deltas.end());
    return minkowski_dimension(boundary_polyline(d, finest / 16.0), true, deltas);
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and count >= 2");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return out;
}

DomainSpec affine_image(const DomainSpec& d, Mat2 q, Vec2 shift) {
    return DomainSpec::affine(d, q, shift);
}

} // namespace indicatrix::geometry
