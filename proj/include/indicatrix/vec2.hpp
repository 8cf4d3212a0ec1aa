#ifndef INDICATRIX_VEC2_HPP
#define INDICATRIX_VEC2_HPP

#include <array>
#include <cmath>

namespace indicatrix {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline Vec2 normalized(Vec2 v) {
    double n = v.norm();
    return n > 0.0 ? v / n : Vec2{0.0, 0.0};
}

// 2x2 matrix, row major.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    double det() const { return a * d - b * c; }
    Mat2 inverse() const {
        double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    Mat2 transpose() const { return {a, c, b, d}; }

    static Mat2 rotation(double angle) {
        double cs = std::cos(angle), sn = std::sin(angle);
        return {cs, -sn, sn, cs};
    }
    static Mat2 scale(double sx, double sy) { return {sx, 0.0, 0.0, sy}; }
};

// Exact distance from point p to segment [a, b].
inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = ab.norm2();
    if (len2 == 0.0) return (p - a).norm();
    double t = dot(p - a, ab) / len2;
    t = std::fmin(1.0, std::fmax(0.0, t));
    return (p - (a + ab * t)).norm();
}

} // namespace indicatrix

#endif
