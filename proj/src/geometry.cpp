#include "barbilliards/geometry.hpp"

#include <algorithm>
#include <cstdio>

namespace barbilliards {

namespace {

double reduce_turns(double t)
{
    double r = t - std::floor(t);
    // t slightly below an integer rounds to exactly 1.0
    return r >= 1.0 ? 0.0 : r;
}

std::array<DiskPoint, 3> oriented(DiskPoint p, DiskPoint q, DiskPoint r)
{
    if (twice_signed_area(p.vec(), q.vec(), r.vec()) < 0.0) {
        return {p, r, q};
    }
    return {p, q, r};
}

}  // namespace

CircleAngle::CircleAngle(double turns) : turns_(reduce_turns(turns))
{
    if (!std::isfinite(turns)) {
        throw GeometryError("circle angle must be finite");
    }
}

CircleAngle CircleAngle::from_radians(double radians)
{
    return CircleAngle(radians / (2.0 * std::numbers::pi));
}

CircleAngle CircleAngle::from_vector(Vec2 v)
{
    if (v.x == 0.0 && v.y == 0.0) {
        throw GeometryError("direction of the zero vector is undefined");
    }
    return from_radians(std::atan2(v.y, v.x));
}

Vec2 CircleAngle::unit_vector() const
{
    const double a = radians();
    return {std::cos(a), std::sin(a)};
}

double ccw_arc(CircleAngle from, CircleAngle to)
{
    double d = to.turns() - from.turns();
    if (d < 0.0) d += 1.0;
    return d >= 1.0 ? 0.0 : d;
}

double circular_distance(CircleAngle a, CircleAngle b)
{
    const double d = ccw_arc(a, b);
    return std::min(d, 1.0 - d);
}

DiskPoint::DiskPoint(double x, double y) : v_{x, y}
{
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw GeometryError("disk point coordinates must be finite");
    }
    if (!(v_.norm2() < 1.0 - kBoundaryGuard)) {
        throw GeometryError("point " + to_string(v_) + " is not strictly inside the unit disk");
    }
}

double twice_signed_area(Vec2 a, Vec2 b, Vec2 c)
{
    return cross(b - a, c - a);
}

Triangle::Triangle(DiskPoint p, DiskPoint q, DiskPoint r) : v_(oriented(p, q, r))
{
    if (!(twice_area() > kAreaGuard)) {
        throw GeometryError("degenerate triangle");
    }
}

double Triangle::twice_area() const
{
    return twice_signed_area(v_[0].vec(), v_[1].vec(), v_[2].vec());
}

Vec2 Triangle::centroid() const
{
    return (v_[0].vec() + v_[1].vec() + v_[2].vec()) / 3.0;
}

Triangle Triangle::rotated_labels(int k) const
{
    const int s = ((k % 3) + 3) % 3;
    return Triangle(vertex(s), vertex((s + 1) % 3), vertex((s + 2) % 3));
}

std::string to_string(Vec2 v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", v.x, v.y);
    return buf;
}

}  // namespace barbilliards
