#ifndef INDICATRIX_DOMAIN_HPP
#define INDICATRIX_DOMAIN_HPP

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "indicatrix/profile.hpp"
#include "indicatrix/vec2.hpp"

namespace indicatrix::geometry {

class DomainSpec;

struct RectangleShape {
    std::vector<double> widths; // [0, w1] x ... x [0, wn]
};

struct DiskShape {
    double radius = 1.0;
    Vec2 center{};
};

// Simple, positively oriented. Large polygons get a row-bucketed edge index
// plus an inside/outside cell grid so membership queries stay O(1).
struct PolygonShape {
    std::vector<Vec2> vertices;
};

// G = {(t, y) : t in (c, b), 0 < y < phi(t)}.
struct SpecialShape {
    double c = 0.0, b = 1.0;
    Profile profile;
};

struct AffineImageShape {
    std::shared_ptr<const DomainSpec> base;
    Mat2 matrix;
    Vec2 shift;
};

// Square of side 2(b-c) with four rigid copies of the arch region W glued
// to its outer sides; see build_theorem3_domain.
struct AssembledShape {
    Profile profile; // already rescaled so phi'(c) = 1
    double side = 0.0;
};

using Shape = std::variant<RectangleShape, DiskShape, PolygonShape, SpecialShape,
                           AffineImageShape, AssembledShape>;

class DomainSpec {
public:
    static DomainSpec rectangle(std::vector<double> widths);
    static DomainSpec disk(double radius, Vec2 center = {});
    static DomainSpec polygon(std::vector<Vec2> vertices);
    static DomainSpec special(double c, double b, Profile profile);
    static DomainSpec affine(DomainSpec base, Mat2 q, Vec2 shift);
    static DomainSpec assembled(Profile profile); // prefer build_theorem3_domain

    int dim() const { return dim_; }
    const Shape& shape() const { return *shape_; }

    double area() const;
    bool contains(Vec2 p) const;                 // 2-D shapes
    std::pair<Vec2, Vec2> bounding_box() const;  // 2-D shapes
    double diameter_bound() const;

    // Arch height over the square side, 0 <= x <= side (Assembled only).
    double arch_height(double x) const;
    double arch_height_deriv(double x) const;

    nlohmann::json to_json() const;
    static DomainSpec from_json(const nlohmann::json& j);

private:
    DomainSpec() = default;
    struct PolygonIndex;

    int dim_ = 2;
    std::shared_ptr<const Shape> shape_;
    std::shared_ptr<const PolygonIndex> poly_index_;
    double cached_area_ = -1.0;
};

// Koch snowflake prefractal: closed ccw polygon with 3 * 4^level edges,
// built over an equilateral triangle with unit side, base at the origin.
DomainSpec make_koch_snowflake(int level);
std::vector<Vec2> koch_snowflake_polyline(int level);

} // namespace indicatrix::geometry

#endif
