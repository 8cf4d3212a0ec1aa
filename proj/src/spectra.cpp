#include "indicatrix/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "indicatrix/bessel.hpp"
#include "indicatrix/errors.hpp"
#include "indicatrix/fft.hpp"
#include "indicatrix/quadrature.hpp"

namespace indicatrix::spectra {

using namespace indicatrix::geometry;

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

// (1 - e^{-iz})/(iz), continuous at z = 0.
complexd edge_factor(double z) {
    if (std::abs(z) < 1e-8) return {1.0 - z * z / 6.0, -z / 2.0 + z * z * z / 24.0};
    return (1.0 - std::exp(-kI * z)) / (kI * z);
}

complexd rectangle_closed(const std::vector<double>& widths, const std::vector<double>& xi) {
    complexd acc{1.0, 0.0};
    for (std::size_t j = 0; j < widths.size(); ++j)
        acc *= widths[j] * edge_factor(xi[j] * widths[j]);
    return acc;
}

complexd disk_closed(const DiskShape& s, Vec2 xi) {
    double q = xi.norm();
    complexd phase = std::exp(-kI * dot(xi, s.center));
    if (q * s.radius < 1e-12) return phase * (M_PI * s.radius * s.radius);
    return phase * (2.0 * M_PI * s.radius * bessel_j1(s.radius * q) / q);
}

int panels_for_cycles(double cycles, int per_cycle = 2, int floor_panels = 4) {
    return std::max(floor_panels, static_cast<int>(std::ceil(cycles * per_cycle)) + 1);
}

// Contour contribution of one straight edge a->b with outward normal for a
// ccw traversal: int_edge e^{-i(xi,x)} (xi, nu) dsigma, evaluated exactly.
complexd edge_contribution(Vec2 a, Vec2 b, Vec2 xi) {
    Vec2 ab = b - a;
    double len = ab.norm();
    if (len == 0.0) return {0.0, 0.0};
    Vec2 tau = ab / len;
    Vec2 nu{tau.y, -tau.x};
    double beta = dot(xi, tau);
    return dot(xi, nu) * len * std::exp(-kI * dot(xi, a)) * edge_factor(beta * len);
}

// Graph piece P(x) = origin + x e_a + H(x) e_o, x in [0, len], traversed in
// the ccw direction of the boundary: the outward element (xi, nu) dsigma
// equals xi_x dP_y - xi_y dP_x.
template <typename Height, typename Slope>
complexd graph_contribution(Vec2 origin, Vec2 e_a, Vec2 e_o, double len, Height&& h,
                            Slope&& dh, double max_slope, Vec2 xi, double finest_scale,
                            int order) {
    auto integrand = [&](double x) -> complexd {
        Vec2 p = origin + e_a * x + e_o * h(x);
        Vec2 v = e_a + e_o * dh(x); // dP/dx
        double weight = xi.x * v.y - xi.y * v.x;
        return std::exp(-kI * dot(xi, p)) * weight;
    };
    double rate = std::abs(dot(xi, e_a)) + max_slope * std::abs(dot(xi, e_o));
    double cycles = len * rate / (2.0 * M_PI);
    int panels = panels_for_cycles(cycles);
    if (finest_scale > 0.0)
        panels = std::max(panels, static_cast<int>(std::ceil(len / finest_scale * 2.0)));
    return composite_gauss(integrand, 0.0, len, panels, order);
}

complexd special_contour(const SpecialShape& s, Vec2 xi, int order) {
    const Profile& phi = s.profile;
    double hb = phi(s.b), hc = phi(s.c);
    complexd acc = edge_contribution({s.c, 0}, {s.b, 0}, xi);
    if (hb > 0) acc += edge_contribution({s.b, 0}, {s.b, hb}, xi);
    // The graph runs b -> c in ccw order; integrating c -> b flips the sign
    // of the outward element.
    acc -= graph_contribution(
        {s.c, 0}, {1, 0}, {0, 1}, s.b - s.c, [&](double x) { return phi(s.c + x); },
        [&](double x) { return phi.deriv(s.c + x); }, phi.max_abs_deriv(), xi,
        phi.finest_scale(), order);
    if (hc > 0) acc += edge_contribution({s.c, hc}, {s.c, 0}, xi);
    return acc;
}

complexd assembled_contour(const DomainSpec& d, const AssembledShape& a, Vec2 xi, int order) {
    const double side = a.side;
    struct Frame {
        Vec2 origin, e_a, e_o;
    } frames[4] = {
        {{0, 0}, {1, 0}, {0, -1}},
        {{side, 0}, {0, 1}, {1, 0}},
        {{side, side}, {-1, 0}, {0, 1}},
        {{0, side}, {0, -1}, {-1, 0}},
    };
    complexd acc{0.0, 0.0};
    for (const Frame& fr : frames)
        acc += graph_contribution(
            fr.origin, fr.e_a, fr.e_o, side, [&](double x) { return d.arch_height(x); },
            [&](double x) { return d.arch_height_deriv(x); }, a.profile.max_abs_deriv(), xi,
            a.profile.finest_scale(), order);
    return acc;
}

complexd boundary_contour(const DomainSpec& d, Vec2 xi, int order) {
    return std::visit(
        [&](const auto& s) -> complexd {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PolygonShape>) {
                complexd acc{0.0, 0.0};
                for (std::size_t i = 0; i < s.vertices.size(); ++i)
                    acc += edge_contribution(s.vertices[i],
                                             s.vertices[(i + 1) % s.vertices.size()], xi);
                return acc;
            } else if constexpr (std::is_same_v<T, RectangleShape>) {
                if (s.widths.size() != 2)
                    throw EngineMismatchError("boundary engine: 2-D rectangles only");
                Vec2 a{0, 0}, b{s.widths[0], 0}, c{s.widths[0], s.widths[1]}, e{0, s.widths[1]};
                return edge_contribution(a, b, xi) + edge_contribution(b, c, xi) +
                       edge_contribution(c, e, xi) + edge_contribution(e, a, xi);
            } else if constexpr (std::is_same_v<T, DiskShape>) {
                auto integrand = [&](double th) -> complexd {
                    Vec2 n{std::cos(th), std::sin(th)};
                    Vec2 x = s.center + n * s.radius;
                    return std::exp(-kI * dot(xi, x)) * dot(xi, n) * s.radius;
                };
                double cycles = s.radius * xi.norm();
                return composite_gauss(integrand, 0.0, 2.0 * M_PI,
                                       panels_for_cycles(cycles, 2, 8), order);
            } else if constexpr (std::is_same_v<T, SpecialShape>) {
                return special_contour(s, xi, order);
            } else if constexpr (std::is_same_v<T, AssembledShape>) {
                return assembled_contour(d, s, xi, order);
            } else if constexpr (std::is_same_v<T, AffineImageShape>) {
                // Map straight-edged bases exactly; parameterize mapped disks.
                const DomainSpec& base = *s.base;
                bool flip = s.matrix.det() < 0.0;
                if (const auto* poly = std::get_if<PolygonShape>(&base.shape())) {
                    std::vector<Vec2> mapped;
                    mapped.reserve(poly->vertices.size());
                    for (Vec2 v : poly->vertices) mapped.push_back(s.matrix.apply(v) + s.shift);
                    if (flip) std::reverse(mapped.begin(), mapped.end());
                    complexd acc{0.0, 0.0};
                    for (std::size_t i = 0; i < mapped.size(); ++i)
                        acc += edge_contribution(mapped[i], mapped[(i + 1) % mapped.size()], xi);
                    return acc;
                }
                if (const auto* rect = std::get_if<RectangleShape>(&base.shape())) {
                    if (rect->widths.size() != 2)
                        throw EngineMismatchError("boundary engine: 2-D rectangles only");
                    std::vector<Vec2> mapped;
                    for (Vec2 v : {Vec2{0, 0}, Vec2{rect->widths[0], 0},
                                   Vec2{rect->widths[0], rect->widths[1]},
                                   Vec2{0, rect->widths[1]}})
                        mapped.push_back(s.matrix.apply(v) + s.shift);
                    if (flip) std::reverse(mapped.begin(), mapped.end());
                    complexd acc{0.0, 0.0};
                    for (std::size_t i = 0; i < 4; ++i)
                        acc += edge_contribution(mapped[i], mapped[(i + 1) % 4], xi);
                    return acc;
                }
                if (const auto* disk = std::get_if<DiskShape>(&base.shape())) {
                    auto integrand = [&](double th) -> complexd {
                        Vec2 n{std::cos(th), std::sin(th)};
                        Vec2 pb = disk->center + n * disk->radius;
                        Vec2 p = s.matrix.apply(pb) + s.shift;
                        Vec2 v = s.matrix.apply(Vec2{-n.y, n.x}) * disk->radius; // dP/dth
                        double weight = xi.x * v.y - xi.y * v.x;
                        return std::exp(-kI * dot(xi, p)) * weight;
                    };
                    double smax = std::sqrt(std::abs(s.matrix.det())) +
                                  std::hypot(s.matrix.a, s.matrix.b) +
                                  std::hypot(s.matrix.c, s.matrix.d);
                    double cycles = disk->radius * smax * xi.norm() / (2.0 * M_PI) + 1.0;
                    complexd acc = composite_gauss(integrand, 0.0, 2.0 * M_PI,
                                                   panels_for_cycles(cycles, 2, 8), order);
                    return flip ? -acc : acc;
                }
                throw EngineMismatchError("boundary engine: unsupported affine base");
            } else {
                throw EngineMismatchError("boundary engine: unsupported shape");
            }
        },
        d.shape());
}

} // namespace

Engine engine_from_name(const std::string& name) {
    if (name == "closed") return Engine::Closed;
    if (name == "boundary") return Engine::Boundary;
    if (name == "grid") return Engine::Grid;
    if (name == "lemma1") return Engine::Lemma1;
    throw ConfigError("unknown engine '" + name + "'");
}

const char* engine_name(Engine e) {
    switch (e) {
    case Engine::Closed: return "closed";
    case Engine::Boundary: return "boundary";
    case Engine::Grid: return "grid";
    case Engine::Lemma1: return "lemma1";
    }
    return "?";
}

std::complex<double> closed_form(const DomainSpec& d, const std::vector<double>& xi) {
    if (static_cast<int>(xi.size()) != d.dim())
        throw std::invalid_argument("closed_form: frequency dimension mismatch");
    if (const auto* rect = std::get_if<RectangleShape>(&d.shape()))
        return rectangle_closed(rect->widths, xi);
    if (d.dim() == 2) return closed_form(d, Vec2{xi[0], xi[1]});
    throw EngineMismatchError("closed engine: rectangle or disk only");
}

std::complex<double> closed_form(const DomainSpec& d, Vec2 xi) {
    if (const auto* rect = std::get_if<RectangleShape>(&d.shape())) {
        if (rect->widths.size() != 2)
            throw std::invalid_argument("closed_form: frequency dimension mismatch");
        return rectangle_closed(rect->widths, {xi.x, xi.y});
    }
    if (const auto* disk = std::get_if<DiskShape>(&d.shape())) return disk_closed(*disk, xi);
    if (const auto* aff = std::get_if<AffineImageShape>(&d.shape())) {
        // hat(1_{QD+b})(u) = |det Q| e^{-i(u,b)} hat(1_D)(Q^T u)
        Vec2 v = aff->matrix.transpose().apply(xi);
        return std::abs(aff->matrix.det()) * std::exp(-kI * dot(xi, aff->shift)) *
               closed_form(*aff->base, v);
    }
    throw EngineMismatchError("closed engine: rectangle or disk only");
}

std::complex<double> boundary_integral(const DomainSpec& d, Vec2 xi, int quad_order) {
    if (d.dim() != 2) throw EngineMismatchError("boundary engine: 2-D domains only");
    double q2 = xi.norm2();
    if (q2 == 0.0) return {d.area(), 0.0};
    return kI / q2 * boundary_contour(d, xi, quad_order);
}

std::complex<double> SpectrumGrid::value_at(int kx, int ky) const {
    if (kx < -n / 2 || kx >= n / 2 || ky < -n / 2 || ky >= n / 2)
        throw std::out_of_range("SpectrumGrid::value_at: index outside grid");
    int ix = (kx + n) % n, iy = (ky + n) % n;
    return values[static_cast<std::size_t>(iy) * n + ix];
}

SpectrumGrid grid_transform(const DomainSpec& d, int n, Vec2 box_lo, Vec2 box_hi) {
    if (!is_pow2(static_cast<std::size_t>(n)))
        throw std::invalid_argument("grid_transform: grid size must be a power of two");
    auto [lo, hi] = d.bounding_box();
    if (lo.x < box_lo.x || lo.y < box_lo.y || hi.x > box_hi.x || hi.y > box_hi.y)
        throw std::invalid_argument("grid_transform: box does not contain the domain");
    double hx = (box_hi.x - box_lo.x) / n, hy = (box_hi.y - box_lo.y) / n;
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
        throw std::invalid_argument("grid_transform: box must have square cells");

    SpectrumGrid g;
    g.n = n;
    g.box_lo = box_lo;
    g.box_hi = box_hi;
    g.cell = hx;

    std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n);
    std::size_t count = 0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            Vec2 center{box_lo.x + (ix + 0.5) * hx, box_lo.y + (iy + 0.5) * hy};
            bool in = d.contains(center);
            mask[static_cast<std::size_t>(iy) * n + ix] = in;
            count += in;
        }
    g.raster_area = static_cast<double>(count) * hx * hy;

    std::size_t straddle = 0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            std::uint8_t v = mask[static_cast<std::size_t>(iy) * n + ix];
            bool edge = (ix + 1 < n && mask[static_cast<std::size_t>(iy) * n + ix + 1] != v) ||
                        (iy + 1 < n && mask[static_cast<std::size_t>(iy + 1) * n + ix] != v);
            straddle += edge;
        }
    g.error_estimate = static_cast<double>(straddle) * hx * hy;

    g.values.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
    for (std::size_t i = 0; i < mask.size(); ++i) g.values[i] = mask[i] ? 1.0 : 0.0;
    fft2_inplace(g.values, n, n, -1);

    // Scale by the cell area and re-anchor phases to the physical cell
    // centers: u_k = 2 pi k/(n h), t_0 = box_lo + h/2.
    const double cell_area = hx * hy;
    const Vec2 t0{box_lo.x + 0.5 * hx, box_lo.y + 0.5 * hy};
    for (int iy = 0; iy < n; ++iy) {
        int ky = iy < n / 2 ? iy : iy - n;
        for (int ix = 0; ix < n; ++ix) {
            int kx = ix < n / 2 ? ix : ix - n;
            Vec2 u{kx * g.freq_step(), ky * g.freq_step()};
            g.values[static_cast<std::size_t>(iy) * n + ix] *=
                cell_area * std::exp(-kI * dot(u, t0));
        }
    }
    return g;
}

std::complex<double> lambda_slice(const Profile& phi, double t, double lambda) {
    if (lambda == 0.0) return {phi(t), 0.0};
    return (std::exp(-kI * lambda * phi(t)) - 1.0) / (-kI * lambda);
}

std::complex<double> lemma1_transform(const DomainSpec& special, double u, double lambda,
                                      int quad_order) {
    const auto* s = std::get_if<SpecialShape>(&special.shape());
    if (!s) throw EngineMismatchError("lemma1 engine: special domains only");
    const Profile& phi = s->profile;

    auto integrand = [&](double t) -> complexd {
        return lambda_slice(phi, t, lambda) * std::exp(-kI * u * t);
    };
    const double len = s->b - s->c;
    double rate = std::abs(u) + std::abs(lambda) * phi.max_abs_deriv();
    int panels = std::max(8, static_cast<int>(std::ceil(len * rate / M_PI)) + 1);
    if (phi.finest_scale() > 0.0)
        panels = std::max(panels, static_cast<int>(std::ceil(len / phi.finest_scale() * 2.0)));

    complexd v1 = composite_gauss(integrand, s->c, s->b, panels, quad_order);
    complexd v2 = composite_gauss(integrand, s->c, s->b, panels * 2 + 1, quad_order + 4);
    if (std::abs(v1 - v2) > 1e-9 * std::max(1.0, std::abs(v2))) {
        complexd v3 = composite_gauss(integrand, s->c, s->b, panels * 4 + 3, quad_order + 8);
        if (std::abs(v2 - v3) > 1e-9 * std::max(1.0, std::abs(v3)))
            throw AccuracyError("lemma1_transform: quadrature did not converge",
                                std::abs(v2 - v3));
        return v3;
    }
    return v2;
}

std::complex<double> transform_value(const DomainSpec& d, Vec2 xi, Engine engine,
                                     int quad_order) {
    switch (engine) {
    case Engine::Closed: return closed_form(d, xi);
    case Engine::Boundary: return boundary_integral(d, xi, quad_order);
    case Engine::Lemma1: return lemma1_transform(d, xi.x, xi.y, quad_order);
    case Engine::Grid:
        throw EngineMismatchError("grid engine has no pointwise evaluation; use grid_transform");
    }
    throw std::logic_error("transform_value: bad engine");
}

std::vector<Engine> pointwise_engines(const DomainSpec& d) {
    std::vector<Engine> out;
    const Shape& s = d.shape();
    if (std::holds_alternative<RectangleShape>(s) || std::holds_alternative<DiskShape>(s))
        out.push_back(Engine::Closed);
    if (const auto* aff = std::get_if<AffineImageShape>(&s)) {
        const Shape& base = aff->base->shape();
        if (std::holds_alternative<RectangleShape>(base) ||
            std::holds_alternative<DiskShape>(base))
            out.push_back(Engine::Closed);
    }
    if (d.dim() == 2 && !std::holds_alternative<SpecialShape>(s)) out.push_back(Engine::Boundary);
    if (std::holds_alternative<SpecialShape>(s)) {
        out.push_back(Engine::Boundary);
        out.push_back(Engine::Lemma1);
    }
    return out;
}

void write_spectrum_csv(std::ostream& os, const SpectrumGrid& g, double max_abs_freq) {
    os << "u1,u2,re,im,abs\n";
    char buf[200];
    int kmax = g.n / 2 - 1;
    for (int ky = -g.n / 2; ky <= kmax; ++ky)
        for (int kx = -g.n / 2; kx <= kmax; ++kx) {
            Vec2 u = g.freq_at(kx, ky);
            if (u.norm() > max_abs_freq) continue;
            auto v = g.value_at(kx, ky);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", u.x, u.y,
                          v.real(), v.imag(), std::abs(v));
            os << buf;
        }
}

void write_spectrum_binary(std::ostream& os, const SpectrumGrid& g) {
    nlohmann::json header = {{"schema", "v1"},
                             {"n", g.n},
                             {"convention", g.convention},
                             {"box", {{g.box_lo.x, g.box_lo.y}, {g.box_hi.x, g.box_hi.y}}},
                             {"layout", "row-major re,im doubles, fft index order"}};
    os << header.dump() << '\n';
    for (const auto& v : g.values) {
        double re = v.real(), im = v.imag();
        os.write(reinterpret_cast<const char*>(&re), sizeof(double));
        os.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
}

} // namespace indicatrix::spectra
