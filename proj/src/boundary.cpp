#include "indicatrix/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>

#include "indicatrix/errors.hpp"
#include "indicatrix/quadrature.hpp"

namespace indicatrix::geometry {

namespace {

void append_point(BoundarySampling& bs, Vec2 p, Vec2 n) {
    if (bs.points.empty()) {
        bs.arc.push_back(0.0);
    } else {
        bs.arc.push_back(bs.arc.back() + (p - bs.points.back()).norm());
    }
    bs.points.push_back(p);
    bs.normals.push_back(normalized(n));
}

void sample_segment(BoundarySampling& bs, Vec2 a, Vec2 b, double step) {
    double len = (b - a).norm();
    if (len == 0.0) return;
    Vec2 dir = (b - a) / len;
    Vec2 normal{dir.y, -dir.x}; // outward for ccw traversal
    int m = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int i = 0; i < m; ++i) append_point(bs, a + dir * (len * i / m), normal);
}

// March t over [t0, t1] (either direction) with local steps giving arc
// increments of ~step along the curve gamma(t); emit(t) appends the sample.
template <typename Speed, typename Emit>
void march_param(double t0, double t1, double step, Speed&& speed, Emit&& emit) {
    const double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    const double min_dt = std::abs(t1 - t0) * 1e-9;
    while (dir * (t1 - t) > 0.0) {
        emit(t);
        double dt = step / std::max(1e-12, speed(t));
        dt = std::max(dt, min_dt);
        t += dir * dt;
    }
}

struct GraphFrame {
    // Maps graph-local coordinates (along, out) to the plane.
    Vec2 origin, e_along, e_out;
    Vec2 point(double along, double h) const { return origin + e_along * along + e_out * h; }
    Vec2 normal(double slope) const { return normalized(e_out - e_along * slope); }
};

} // namespace

BoundarySampling sample_boundary(const DomainSpec& d, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("sample_boundary: step must be positive");
    if (d.area() <= 0.0) throw InvariantViolation("sample_boundary: degenerate domain");
    BoundarySampling bs;

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RectangleShape>) {
                if (s.widths.size() != 2)
                    throw EngineMismatchError("sample_boundary: 2-D rectangles only");
                Vec2 a{0, 0}, b{s.widths[0], 0}, c{s.widths[0], s.widths[1]}, e{0, s.widths[1]};
                sample_segment(bs, a, b, step);
                sample_segment(bs, b, c, step);
                sample_segment(bs, c, e, step);
                sample_segment(bs, e, a, step);
            } else if constexpr (std::is_same_v<T, DiskShape>) {
                int m = std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * s.radius / step)));
                for (int i = 0; i < m; ++i) {
                    double th = 2.0 * M_PI * i / m;
                    Vec2 n{std::cos(th), std::sin(th)};
                    append_point(bs, s.center + n * s.radius, n);
                }
            } else if constexpr (std::is_same_v<T, PolygonShape>) {
                const auto& v = s.vertices;
                for (std::size_t i = 0; i < v.size(); ++i)
                    sample_segment(bs, v[i], v[(i + 1) % v.size()], step);
            } else if constexpr (std::is_same_v<T, SpecialShape>) {
                const Profile& phi = s.profile;
                double hb = phi(s.b), hc = phi(s.c);
                sample_segment(bs, {s.c, 0}, {s.b, 0}, step);
                if (hb > 0) sample_segment(bs, {s.b, 0}, {s.b, hb}, step);
                march_param(s.b, s.c, step,
                            [&](double t) { return std::hypot(1.0, phi.deriv(t)); },
                            [&](double t) {
                                double dp = phi.deriv(t);
                                append_point(bs, {t, phi(t)}, {-dp, 1.0});
                            });
                if (hc > 0) sample_segment(bs, {s.c, hc}, {s.c, 0}, step);
            } else if constexpr (std::is_same_v<T, AffineImageShape>) {
                // Largest singular value of Q bounds the local stretch.
                double a2 = s.matrix.a * s.matrix.a + s.matrix.b * s.matrix.b;
                double c2 = s.matrix.c * s.matrix.c + s.matrix.d * s.matrix.d;
                double cr = s.matrix.a * s.matrix.c + s.matrix.b * s.matrix.d;
                double tr = a2 + c2;
                double disc = std::sqrt(std::max(0.0, 0.25 * (a2 - c2) * (a2 - c2) + cr * cr));
                double smax = std::sqrt(0.5 * tr + disc);
                BoundarySampling base = sample_boundary(*s.base, step / smax);
                Mat2 nrm = s.matrix.inverse().transpose();
                bool flip = s.matrix.det() < 0.0;
                const std::size_t n = base.size();
                for (std::size_t k = 0; k < n; ++k) {
                    std::size_t i = flip ? n - 1 - k : k;
                    append_point(bs, s.matrix.apply(base.points[i]) + s.shift,
                                 nrm.apply(base.normals[i]));
                }
            } else {
                const AssembledShape& a = s;
                const double side = a.side;
                GraphFrame frames[4] = {
                    {{0, 0}, {1, 0}, {0, -1}},       // bottom, arch hangs below
                    {{side, 0}, {0, 1}, {1, 0}},     // right
                    {{side, side}, {-1, 0}, {0, 1}}, // top
                    {{0, side}, {0, -1}, {-1, 0}},   // left
                };
                for (const GraphFrame& fr : frames) {
                    march_param(0.0, side, step,
                                [&](double x) { return std::hypot(1.0, d.arch_height_deriv(x)); },
                                [&](double x) {
                                    append_point(bs, fr.point(x, d.arch_height(x)),
                                                 fr.normal(d.arch_height_deriv(x)));
                                });
                }
            }
        },
        d.shape());

    if (bs.points.size() < 3) throw InvariantViolation("sample_boundary: too few samples");
    return bs;
}

std::vector<std::pair<double, double>> normal_modulus(const BoundarySampling& bs,
                                                      const std::vector<double>& delta_grid) {
    if (delta_grid.empty()) throw std::invalid_argument("normal_modulus: empty delta grid");
    if (bs.points.empty()) throw std::invalid_argument("normal_modulus: empty sampling");

    std::vector<std::pair<double, double>> out;
    out.reserve(delta_grid.size());

    for (double delta : delta_grid) {
        if (!(delta > 0.0)) throw std::invalid_argument("normal_modulus: delta must be positive");
        // Bucket points into delta-sized cells; all pairs within delta live
        // in adjacent cells.
        const std::size_t n = bs.points.size();
        std::vector<std::pair<std::int64_t, std::uint32_t>> keyed(n);
        auto key_of = [&](Vec2 p) {
            auto cx = static_cast<std::int64_t>(std::floor(p.x / delta));
            auto cy = static_cast<std::int64_t>(std::floor(p.y / delta));
            return (cx << 32) ^ (cy & 0xffffffffLL);
        };
        for (std::size_t i = 0; i < n; ++i)
            keyed[i] = {key_of(bs.points[i]), static_cast<std::uint32_t>(i)};
        std::sort(keyed.begin(), keyed.end());

        auto bucket = [&](std::int64_t key) {
            return std::equal_range(keyed.begin(), keyed.end(),
                                    std::make_pair(key, std::uint32_t{0}),
                                    [](const auto& a, const auto& b) { return a.first < b.first; });
        };

        double sup = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 p = bs.points[i];
            auto cx = static_cast<std::int64_t>(std::floor(p.x / delta));
            auto cy = static_cast<std::int64_t>(std::floor(p.y / delta));
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    std::int64_t key = ((cx + dx) << 32) ^ ((cy + dy) & 0xffffffffLL);
                    auto [lo, hi] = bucket(key);
                    for (auto it = lo; it != hi; ++it) {
                        std::uint32_t j = it->second;
                        if (j <= i) continue;
                        if ((bs.points[j] - p).norm() <= delta)
                            sup = std::max(sup, (bs.normals[j] - bs.normals[i]).norm());
                    }
                }
        }
        out.emplace_back(delta, sup);
    }
    return out;
}

NormalModulusFit normal_modulus_fit(const DomainSpec& d, const std::vector<double>& deltas) {
    NormalModulusFit fit;
    std::vector<double> lx, ly;
    for (double delta : deltas) {
        BoundarySampling bs = sample_boundary(d, delta / 8.0);
        auto m = normal_modulus(bs, {delta});
        fit.measured.emplace_back(delta, m.front().second);
        if (m.front().second > 0.0) {
            lx.push_back(std::log(delta));
            ly.push_back(std::log(m.front().second));
        }
    }
    if (lx.size() >= 2) {
        LineFit lf = fit_line(lx, ly);
        fit.exponent = lf.slope;
        fit.residual = lf.residual;
    }
    return fit;
}

void write_boundary_csv(std::ostream& os, const BoundarySampling& bs) {
    os << "s,x,y,nx,ny\n";
    char buf[160];
    for (std::size_t i = 0; i < bs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", bs.arc[i],
                      bs.points[i].x, bs.points[i].y, bs.normals[i].x, bs.normals[i].y);
        os << buf;
    }
}

} // namespace indicatrix::geometry
