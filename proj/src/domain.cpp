#include "indicatrix/domain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "indicatrix/errors.hpp"
#include "indicatrix/theorem3.hpp"

namespace indicatrix::geometry {

namespace {

double shoelace_area2(const std::vector<Vec2>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        s += cross(a, b);
    }
    return s;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
        double v = cross(q - p, r - p);
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4;
}

std::pair<Vec2, Vec2> polyline_bbox(const std::vector<Vec2>& v) {
    Vec2 lo = v.front(), hi = v.front();
    for (const Vec2& p : v) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    return {lo, hi};
}

} // namespace

// Row-bucketed edges plus an inside/outside cell grid for large polygons.
struct DomainSpec::PolygonIndex {
    std::vector<Vec2> verts;
    Vec2 lo, hi;
    int rows = 0;
    std::vector<std::vector<int>> row_edges;

    int cells = 0; // cell grid is cells x cells; 0 = disabled
    std::vector<std::uint8_t> cell_state; // 0 boundary/unknown, 1 inside, 2 outside

    explicit PolygonIndex(const std::vector<Vec2>& v) : verts(v) {
        std::tie(lo, hi) = polyline_bbox(v);
        const int n = static_cast<int>(v.size());
        rows = std::clamp(n, 16, 4096);
        row_edges.assign(rows, {});
        for (int e = 0; e < n; ++e) {
            const Vec2& a = v[e];
            const Vec2& b = v[(e + 1) % n];
            int r0 = row_of(std::min(a.y, b.y));
            int r1 = row_of(std::max(a.y, b.y));
            for (int r = r0; r <= r1; ++r) row_edges[r].push_back(e);
        }
        if (n > 4096) build_cell_grid();
    }

    int row_of(double y) const {
        double t = (y - lo.y) / (hi.y - lo.y);
        return std::clamp(static_cast<int>(t * rows), 0, rows - 1);
    }

    bool ray_cast(Vec2 p) const {
        const int n = static_cast<int>(verts.size());
        int count = 0;
        for (int e : row_edges[row_of(p.y)]) {
            const Vec2& a = verts[e];
            const Vec2& b = verts[(e + 1) % n];
            if ((a.y > p.y) != (b.y > p.y)) {
                double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (xint > p.x) ++count;
            }
        }
        return count % 2 == 1;
    }

    void build_cell_grid() {
        cells = 2048;
        cell_state.assign(static_cast<std::size_t>(cells) * cells, 0);
        const double w = hi.x - lo.x, h = hi.y - lo.y;
        auto cell_of = [&](Vec2 p) {
            int cx = std::clamp(static_cast<int>((p.x - lo.x) / w * cells), 0, cells - 1);
            int cy = std::clamp(static_cast<int>((p.y - lo.y) / h * cells), 0, cells - 1);
            return std::pair<int, int>(cx, cy);
        };
        // Mark a band around every edge as boundary (state 0), everything
        // else resolves by flood fill.
        std::vector<std::uint8_t> touched(cell_state.size(), 0);
        const double step = std::min(w, h) / cells * 0.25;
        const int n = static_cast<int>(verts.size());
        for (int e = 0; e < n; ++e) {
            Vec2 a = verts[e], b = verts[(e + 1) % n];
            double len = (b - a).norm();
            int m = std::max(1, static_cast<int>(len / step));
            for (int i = 0; i <= m; ++i) {
                auto [cx, cy] = cell_of(a + (b - a) * (static_cast<double>(i) / m));
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int x = cx + dx, y = cy + dy;
                        if (x >= 0 && x < cells && y >= 0 && y < cells)
                            touched[static_cast<std::size_t>(y) * cells + x] = 1;
                    }
            }
        }
        // Flood fill from the border: bbox edges are outside the polygon
        // interior unless touched.
        std::deque<std::pair<int, int>> queue;
        auto push_outside = [&](int x, int y) {
            std::size_t idx = static_cast<std::size_t>(y) * cells + x;
            if (!touched[idx] && cell_state[idx] == 0) {
                cell_state[idx] = 2;
                queue.emplace_back(x, y);
            }
        };
        for (int i = 0; i < cells; ++i) {
            push_outside(i, 0);
            push_outside(i, cells - 1);
            push_outside(0, i);
            push_outside(cells - 1, i);
        }
        while (!queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            const int du[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (auto& d : du) {
                int nx = x + d[0], ny = y + d[1];
                if (nx >= 0 && nx < cells && ny >= 0 && ny < cells) push_outside(nx, ny);
            }
        }
        for (std::size_t i = 0; i < cell_state.size(); ++i)
            if (!touched[i] && cell_state[i] == 0) cell_state[i] = 1;
    }

    bool contains(Vec2 p) const {
        if (p.x < lo.x || p.x > hi.x || p.y < lo.y || p.y > hi.y) return false;
        if (cells > 0) {
            int cx = std::clamp(static_cast<int>((p.x - lo.x) / (hi.x - lo.x) * cells), 0, cells - 1);
            int cy = std::clamp(static_cast<int>((p.y - lo.y) / (hi.y - lo.y) * cells), 0, cells - 1);
            std::uint8_t s = cell_state[static_cast<std::size_t>(cy) * cells + cx];
            if (s == 1) return true;
            if (s == 2) return false;
        }
        return ray_cast(p);
    }
};

DomainSpec DomainSpec::rectangle(std::vector<double> widths) {
    if (widths.size() < 2) throw std::invalid_argument("rectangle: dimension must be >= 2");
    for (double w : widths)
        if (!(w > 0.0)) throw std::invalid_argument("rectangle: widths must be positive");
    DomainSpec d;
    d.dim_ = static_cast<int>(widths.size());
    d.shape_ = std::make_shared<Shape>(RectangleShape{std::move(widths)});
    return d;
}

DomainSpec DomainSpec::disk(double radius, Vec2 center) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk: radius must be positive");
    DomainSpec d;
    d.dim_ = 2;
    d.shape_ = std::make_shared<Shape>(DiskShape{radius, center});
    return d;
}

DomainSpec DomainSpec::polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon: need >= 3 vertices");
    if (shoelace_area2(vertices) <= 0.0)
        throw std::invalid_argument("polygon: must be counterclockwise with positive area");
    const std::size_t n = vertices.size();
    if (n <= 1024) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j],
                                       vertices[(j + 1) % n]))
                    throw std::invalid_argument("polygon: self-intersecting");
            }
    }
    DomainSpec d;
    d.dim_ = 2;
    auto idx = std::make_shared<PolygonIndex>(vertices);
    d.shape_ = std::make_shared<Shape>(PolygonShape{std::move(vertices)});
    d.poly_index_ = std::move(idx);
    return d;
}

DomainSpec DomainSpec::special(double c, double b, Profile profile) {
    if (!(b > c)) throw std::invalid_argument("special: empty interval");
    const int grid = 2048;
    for (int i = 1; i < grid; ++i) {
        double t = c + (b - c) * i / grid;
        if (!(profile(t) > 0.0))
            throw std::invalid_argument("special: profile must be positive on (c, b)");
    }
    DomainSpec d;
    d.dim_ = 2;
    d.shape_ = std::make_shared<Shape>(SpecialShape{c, b, std::move(profile)});
    return d;
}

DomainSpec DomainSpec::affine(DomainSpec base, Mat2 q, Vec2 shift) {
    if (base.dim() != 2) throw std::invalid_argument("affine: 2-D domains only");
    if (std::abs(q.det()) < 1e-300) throw std::invalid_argument("affine: singular matrix");
    DomainSpec d;
    d.dim_ = 2;
    d.shape_ = std::make_shared<Shape>(
        AffineImageShape{std::make_shared<DomainSpec>(std::move(base)), q, shift});
    return d;
}

DomainSpec DomainSpec::assembled(Profile profile) {
    check_theorem3_profile(profile);
    DomainSpec d;
    d.dim_ = 2;
    double side = 2.0 * (profile.b() - profile.c());
    d.shape_ = std::make_shared<Shape>(AssembledShape{std::move(profile), side});
    return d;
}

double DomainSpec::area() const {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RectangleShape>) {
                double a = 1.0;
                for (double w : s.widths) a *= w;
                return a;
            } else if constexpr (std::is_same_v<T, DiskShape>) {
                return M_PI * s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, PolygonShape>) {
                return 0.5 * shoelace_area2(s.vertices);
            } else if constexpr (std::is_same_v<T, SpecialShape>) {
                return s.profile.antiderivative(s.b);
            } else if constexpr (std::is_same_v<T, AffineImageShape>) {
                return std::abs(s.matrix.det()) * s.base->area();
            } else {
                const AssembledShape& a = s;
                double arch = a.profile.antiderivative(a.profile.b());
                return a.side * a.side + 8.0 * arch;
            }
        },
        *shape_);
}

double DomainSpec::arch_height(double x) const {
    const auto* a = std::get_if<AssembledShape>(shape_.get());
    if (!a) throw std::logic_error("arch_height: assembled domains only");
    const double half = 0.5 * a->side;
    double u = x <= half ? x : a->side - x;
    return a->profile(a->profile.c() + u);
}

double DomainSpec::arch_height_deriv(double x) const {
    const auto* a = std::get_if<AssembledShape>(shape_.get());
    if (!a) throw std::logic_error("arch_height_deriv: assembled domains only");
    const double half = 0.5 * a->side;
    if (x <= half) return a->profile.deriv(a->profile.c() + x);
    return -a->profile.deriv(a->profile.c() + (a->side - x));
}

bool DomainSpec::contains(Vec2 p) const {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RectangleShape>) {
                if (s.widths.size() != 2)
                    throw std::logic_error("contains: 2-D rectangles only");
                return p.x > 0.0 && p.x < s.widths[0] && p.y > 0.0 && p.y < s.widths[1];
            } else if constexpr (std::is_same_v<T, DiskShape>) {
                return (p - s.center).norm2() < s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, PolygonShape>) {
                return poly_index_->contains(p);
            } else if constexpr (std::is_same_v<T, SpecialShape>) {
                return p.x > s.c && p.x < s.b && p.y > 0.0 && p.y < s.profile(p.x);
            } else if constexpr (std::is_same_v<T, AffineImageShape>) {
                return s.base->contains(s.matrix.inverse().apply(p - s.shift));
            } else {
                const AssembledShape& a = s;
                const double side = a.side;
                if (p.x > 0.0 && p.x < side && p.y > 0.0 && p.y < side) return true;
                auto in_arch = [&](double along, double out) {
                    return along > 0.0 && along < side && out > 0.0 &&
                           out < arch_height(along);
                };
                if (p.y <= 0.0) return in_arch(p.x, -p.y);           // bottom
                if (p.y >= side) return in_arch(p.x, p.y - side);    // top
                if (p.x >= side) return in_arch(p.y, p.x - side);    // right
                if (p.x <= 0.0) return in_arch(p.y, -p.x);           // left
                return false;
            }
        },
        *shape_);
}

std::pair<Vec2, Vec2> DomainSpec::bounding_box() const {
    return std::visit(
        [&](const auto& s) -> std::pair<Vec2, Vec2> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RectangleShape>) {
                if (s.widths.size() != 2)
                    throw std::logic_error("bounding_box: 2-D rectangles only");
                return {Vec2{0, 0}, Vec2{s.widths[0], s.widths[1]}};
            } else if constexpr (std::is_same_v<T, DiskShape>) {
                Vec2 r{s.radius, s.radius};
                return {s.center - r, s.center + r};
            } else if constexpr (std::is_same_v<T, PolygonShape>) {
                return polyline_bbox(s.vertices);
            } else if constexpr (std::is_same_v<T, SpecialShape>) {
                double top = 0.0;
                const int grid = 4096;
                for (int i = 0; i <= grid; ++i)
                    top = std::max(top, s.profile(s.c + (s.b - s.c) * i / grid));
                return {Vec2{s.c, 0.0}, Vec2{s.b, top * (1.0 + 1e-9)}};
            } else if constexpr (std::is_same_v<T, AffineImageShape>) {
                auto [lo, hi] = s.base->bounding_box();
                Vec2 corners[4] = {lo, hi, {lo.x, hi.y}, {hi.x, lo.y}};
                Vec2 nlo = s.matrix.apply(corners[0]) + s.shift, nhi = nlo;
                for (Vec2 cpt : corners) {
                    Vec2 m = s.matrix.apply(cpt) + s.shift;
                    nlo.x = std::min(nlo.x, m.x);
                    nlo.y = std::min(nlo.y, m.y);
                    nhi.x = std::max(nhi.x, m.x);
                    nhi.y = std::max(nhi.y, m.y);
                }
                return {nlo, nhi};
            } else {
                const AssembledShape& a = s;
                double top = a.profile(a.profile.b());
                return {Vec2{-top, -top}, Vec2{a.side + top, a.side + top}};
            }
        },
        *shape_);
}

double DomainSpec::diameter_bound() const {
    auto [lo, hi] = bounding_box();
    return (hi - lo).norm();
}

nlohmann::json DomainSpec::to_json() const {
    return std::visit(
        [&](const auto& s) -> nlohmann::json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RectangleShape>) {
                return {{"shape", "rectangle"}, {"widths", s.widths}};
            } else if constexpr (std::is_same_v<T, DiskShape>) {
                return {{"shape", "disk"},
                        {"radius", s.radius},
                        {"center", {s.center.x, s.center.y}}};
            } else if constexpr (std::is_same_v<T, PolygonShape>) {
                nlohmann::json verts = nlohmann::json::array();
                for (const Vec2& v : s.vertices) verts.push_back({v.x, v.y});
                return {{"shape", "polygon"}, {"vertices", verts}};
            } else if constexpr (std::is_same_v<T, SpecialShape>) {
                return {{"shape", "special"},
                        {"interval", {s.c, s.b}},
                        {"profile", s.profile.to_json()}};
            } else if constexpr (std::is_same_v<T, AffineImageShape>) {
                return {{"shape", "affine"},
                        {"base", s.base->to_json()},
                        {"matrix", {{s.matrix.a, s.matrix.b}, {s.matrix.c, s.matrix.d}}},
                        {"shift", {s.shift.x, s.shift.y}}};
            } else {
                const AssembledShape& a = s;
                nlohmann::json j = {{"shape", "assembled"}, {"side", a.side}};
                j["profile"] = a.profile.to_json();
                return j;
            }
        },
        *shape_);
}

DomainSpec DomainSpec::from_json(const nlohmann::json& j) {
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "rectangle") return rectangle(j.at("widths").get<std::vector<double>>());
    if (shape == "disk") {
        Vec2 center{};
        if (j.contains("center"))
            center = {j["center"].at(0).get<double>(), j["center"].at(1).get<double>()};
        return disk(j.at("radius").get<double>(), center);
    }
    if (shape == "polygon") {
        std::vector<Vec2> verts;
        for (const auto& row : j.at("vertices"))
            verts.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
        return polygon(std::move(verts));
    }
    if (shape == "koch") return make_koch_snowflake(j.value("level", 8));
    if (shape == "special") {
        auto iv = j.at("interval");
        return special(iv.at(0).get<double>(), iv.at(1).get<double>(),
                       Profile::from_json(j.at("profile")));
    }
    if (shape == "affine") {
        auto m = j.at("matrix");
        Mat2 q{m.at(0).at(0).get<double>(), m.at(0).at(1).get<double>(),
               m.at(1).at(0).get<double>(), m.at(1).at(1).get<double>()};
        Vec2 shift{};
        if (j.contains("shift"))
            shift = {j["shift"].at(0).get<double>(), j["shift"].at(1).get<double>()};
        return affine(from_json(j.at("base")), q, shift);
    }
    if (shape == "assembled") {
        if (j.contains("profile"))
            return build_theorem3_domain(Profile::from_json(j.at("profile")), 1e-6);
        auto m = moduli::Modulus::from_json(j.at("modulus"));
        double c = 0.0, b = 1.0;
        if (j.contains("interval")) {
            c = j["interval"].at(0).get<double>();
            b = j["interval"].at(1).get<double>();
        }
        Profile phi = make_surrogate_profile(m, c, b, j.value("eta", 0.25),
                                             j.value("depth", 20));
        return build_theorem3_domain(phi, 1e-6);
    }
    throw ConfigError("DomainSpec: unknown shape '" + shape + "'");
}

std::vector<Vec2> koch_snowflake_polyline(int level) {
    if (level < 0 || level > 10)
        throw std::invalid_argument("koch_snowflake_polyline: level in [0, 10]");
    // Outward-pointing bumps with a ccw traversal of the base triangle.
    std::vector<Vec2> pts = {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    for (int l = 0; l < level; ++l) {
        std::vector<Vec2> next;
        next.reserve(pts.size() * 4);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Vec2 a = pts[i], b = pts[(i + 1) % pts.size()];
            Vec2 d = (b - a) / 3.0;
            Vec2 p1 = a + d, p2 = a + d * 2.0;
            // Outward for ccw orientation: rotate d by -60 degrees.
            Vec2 tip = p1 + Mat2::rotation(-M_PI / 3.0).apply(d);
            next.push_back(a);
            next.push_back(p1);
            next.push_back(tip);
            next.push_back(p2);
        }
        pts = std::move(next);
    }
    return pts;
}

DomainSpec make_koch_snowflake(int level) {
    return DomainSpec::polygon(koch_snowflake_polyline(level));
}

} // namespace indicatrix::geometry
