#pragma once

#include <cmath>

namespace isomesh {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Rotate v counter-clockwise by theta.
inline Vec2 rotate(const Vec2& v, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// General (not necessarily symmetric) 2x2 matrix, row major.
struct Mat2 {
    double a = 0.0, b = 0.0;  // [a b]
    double c = 0.0, d = 0.0;  // [c d]

    Mat2() = default;
    Mat2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 rotation(double theta) {
        const double co = std::cos(theta), si = std::sin(theta);
        return {co, -si, si, co};
    }
    static Mat2 from_columns(const Vec2& c0, const Vec2& c1) {
        return {c0.x, c1.x, c0.y, c1.y};
    }

    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }

    Mat2 transposed() const { return {a, c, b, d}; }
    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Mat2 inverse() const {
        const double det_ = det();
        return {d / det_, -b / det_, -c / det_, a / det_};
    }
    double frobenius_norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }
};

// Closest rotation matrix in Frobenius norm (polar factor of a 2x2 matrix
// with positive determinant).
inline Mat2 polar_rotation(const Mat2& A) {
    // For 2x2, the polar rotation is (A + det-sign adjugate trick):
    //   R = (A + sign(det A) * adj(A)^T) normalized.
    const double s = A.det() >= 0.0 ? 1.0 : -1.0;
    Mat2 B(A.a + s * A.d, A.b - s * A.c, A.c - s * A.b, A.d + s * A.a);
    const double n = std::hypot(B.a, B.c);
    return {B.a / n, B.b / n, B.c / n, B.d / n};
}

}  // namespace isomesh
