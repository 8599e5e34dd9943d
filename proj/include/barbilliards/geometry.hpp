#pragma once

// Basic value types shared by every module: plane vectors, points of the
// open unit disk, points of the unit circle measured in turns, and the
// triangular obstacle.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace barbilliards {

/// Points with x^2 + y^2 >= 1 - kBoundaryGuard are rejected.
inline constexpr double kBoundaryGuard = 1e-12;
/// Minimum twice-signed-area of a triangle after orientation normalization.
inline constexpr double kAreaGuard = 1e-10;

/// Raised for input that is outside the disk, coincident, or collinear.
class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr bool operator==(const Vec2&) const = default;

    constexpr double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Counterclockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

/// A point of S^1 = R/Z, stored in turns in [0, 1).
class CircleAngle {
public:
    constexpr CircleAngle() = default;
    explicit CircleAngle(double turns);

    static CircleAngle from_radians(double radians);
    static CircleAngle from_vector(Vec2 v);

    double turns() const { return turns_; }
    double radians() const { return turns_ * 2.0 * std::numbers::pi; }
    Vec2 unit_vector() const;

    bool operator==(const CircleAngle&) const = default;

private:
    double turns_ = 0.0;
};

/// Counterclockwise arc length from `from` to `to`, in turns, in [0, 1).
double ccw_arc(CircleAngle from, CircleAngle to);
/// Shortest arc length between two angles, in turns, in [0, 1/2].
double circular_distance(CircleAngle a, CircleAngle b);

/// A Euclidean point strictly inside the unit disk. Read as a point of
/// the Poincare disk or of the Beltrami-Klein disk depending on use.
class DiskPoint {
public:
    DiskPoint(double x, double y);
    explicit DiskPoint(Vec2 v) : DiskPoint(v.x, v.y) {}

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    Vec2 vec() const { return v_; }
    double norm2() const { return v_.norm2(); }

    bool operator==(const DiskPoint&) const = default;

private:
    Vec2 v_;
};

/// A point at infinity (a point of the unit circle).
class BoundaryPoint {
public:
    BoundaryPoint() = default;
    explicit BoundaryPoint(CircleAngle angle) : angle_(angle) {}
    /// Projects a nonzero vector radially onto the circle.
    static BoundaryPoint from_cartesian(Vec2 v) { return BoundaryPoint(CircleAngle::from_vector(v)); }

    CircleAngle angle() const { return angle_; }
    Vec2 cartesian() const { return angle_.unit_vector(); }

private:
    CircleAngle angle_;
};

/// Three non-collinear disk points stored counterclockwise. A clockwise
/// input has its last two vertices swapped.
class Triangle {
public:
    Triangle(DiskPoint p, DiskPoint q, DiskPoint r);

    const DiskPoint& p() const { return v_[0]; }
    const DiskPoint& q() const { return v_[1]; }
    const DiskPoint& r() const { return v_[2]; }
    const DiskPoint& vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
    const std::array<DiskPoint, 3>& vertices() const { return v_; }

    /// Twice the signed area; positive by construction.
    double twice_area() const;
    Vec2 centroid() const;
    /// Cyclic relabeling (p, q, r) -> (q, r, p), applied `k` times.
    Triangle rotated_labels(int k) const;

private:
    std::array<DiskPoint, 3> v_;
};

double twice_signed_area(Vec2 a, Vec2 b, Vec2 c);

std::string to_string(Vec2 v);

}  // namespace barbilliards
