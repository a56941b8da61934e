#pragma once

#include <cmath>

namespace phx {

/// 2D vector with plain value semantics.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }

/// 2x2 matrix, row-major: [[a00, a01], [a10, a11]].
struct Mat2 {
    double a00 = 0.0, a01 = 0.0;
    double a10 = 0.0, a11 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2& operator+=(const Mat2& o) {
        a00 += o.a00; a01 += o.a01; a10 += o.a10; a11 += o.a11;
        return *this;
    }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator*(double s, const Mat2& m) {
    return {s * m.a00, s * m.a01, s * m.a10, s * m.a11};
}
inline Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a00 * v.x + m.a01 * v.y, m.a10 * v.x + m.a11 * v.y};
}
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
            a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
}
inline double trace(const Mat2& m) { return m.a00 + m.a11; }
inline double det(const Mat2& m) { return m.a00 * m.a11 - m.a01 * m.a10; }

/// Wrap a coordinate into [-1/2, 1/2).
inline double wrap_unit(double x) {
    double w = x - std::floor(x + 0.5);
    // floor rounding can land exactly on +1/2
    if (w >= 0.5) w -= 1.0;
    return w;
}

inline Vec2 wrap_unit(Vec2 r) { return {wrap_unit(r.x), wrap_unit(r.y)}; }

}  // namespace phx
