#include "barbilliards/hyperbolic_models.hpp"

#include <algorithm>

namespace barbilliards::hyperbolic {

namespace detail {

double acosh1p(double w)
{
    return std::log1p(w + std::sqrt(w * (w + 2.0)));
}

double poincare_distance(Vec2 p, Vec2 q)
{
    const double w = 2.0 * (p - q).norm2() / ((1.0 - p.norm2()) * (1.0 - q.norm2()));
    return acosh1p(w);
}

// The chord p + t (q - p) meets the circle at t_- < 0 < 1 < t_+. With
// a = |q-p|^2 the cross-ratio collapses to
//   d' = log(|v1 q| |v2 p| / sqrt((1-|p|^2)(1-|q|^2)))
// where a t_+ = s - p.d and a (1 - t_-) = s + q.d. Each factor is taken in
// the form free of cancellation.
double klein_distance(Vec2 p, Vec2 q)
{
    const Vec2 d = q - p;
    const double a = d.norm2();
    if (a == 0.0) return 0.0;
    const double mp = 1.0 - p.norm2();
    const double mq = 1.0 - q.norm2();
    const double b = dot(p, d);
    const double e = dot(q, d);
    // discriminant written symmetrically in (p, q)
    const double s = std::sqrt(0.5 * ((b * b + a * mp) + (e * e + a * mq)));
    const double forward = b <= 0.0 ? s - b : a * mp / (s + b);
    const double backward = e >= 0.0 ? s + e : a * mq / (s - e);
    const double ratio = (forward * backward) / (a * std::sqrt(mp * mq));
    return std::max(0.0, std::log(ratio));
}

Vec2 to_klein(Vec2 p)
{
    return p * (2.0 / (1.0 + p.norm2()));
}

Vec2 from_klein(Vec2 p)
{
    return p / (1.0 + std::sqrt(std::max(0.0, 1.0 - p.norm2())));
}

}  // namespace detail

double poincare_distance(const DiskPoint& p, const DiskPoint& q)
{
    return detail::poincare_distance(p.vec(), q.vec());
}

double tangent_gap(double d)
{
    if (!(d > 0.0)) {
        throw std::domain_error("tangent gap needs a positive distance");
    }
    return std::log1p(2.0 / std::expm1(d));
}

DiskPoint to_klein(const DiskPoint& p)
{
    return DiskPoint(detail::to_klein(p.vec()));
}

DiskPoint from_klein(const DiskPoint& p)
{
    return DiskPoint(detail::from_klein(p.vec()));
}

ChordEndpoints klein_chord_endpoints(const DiskPoint& p, const DiskPoint& q)
{
    const Vec2 d = q.vec() - p.vec();
    if (d.norm() <= 1e-12) {
        throw GeometryError("degenerate chord: coincident points");
    }
    const double a = d.norm2();
    const double b = dot(p.vec(), d);
    const double mp = 1.0 - p.norm2();
    const double s = std::sqrt(b * b + a * mp);
    // roots of a t^2 + 2 b t - mp = 0
    double t_minus;
    double t_plus;
    if (b >= 0.0) {
        t_minus = -(s + b) / a;
        t_plus = mp / (s + b);
    } else {
        t_plus = (s - b) / a;
        t_minus = -mp / (s - b);
    }
    return {BoundaryPoint::from_cartesian(p.vec() + d * t_minus),
            BoundaryPoint::from_cartesian(p.vec() + d * t_plus)};
}

double klein_distance(const DiskPoint& p, const DiskPoint& q)
{
    return detail::klein_distance(p.vec(), q.vec());
}

double klein_tangent_gap(const DiskPoint& p, const DiskPoint& q)
{
    return tangent_gap(klein_distance(p, q));
}

SideLengths klein_side_lengths(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r)
{
    return {klein_distance(q, r), klein_distance(r, p), klein_distance(p, q)};
}

double foot_distance(const SideLengths& sides)
{
    constexpr double slack = 1e-10;
    const auto [alpha, beta, gamma] = sides;
    if (!(gamma > 0.0) || alpha < 0.0 || beta < 0.0) {
        throw std::domain_error("side lengths must be nonnegative with gamma > 0");
    }
    const double s = 0.5 * (alpha + beta + gamma);
    const double sa = s - alpha;
    const double sb = s - beta;
    const double sc = s - gamma;
    if (sa < -slack || sb < -slack || sc < -slack) {
        throw std::domain_error("side lengths violate the triangle inequality");
    }
    const double product = std::sinh(s) * std::sinh(std::max(sa, 0.0)) *
                           std::sinh(std::max(sb, 0.0)) * std::sinh(std::max(sc, 0.0));
    return std::asinh(2.0 * std::sqrt(product) / std::sinh(gamma));
}

double delta(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r)
{
    if (!(std::abs(twice_signed_area(p.vec(), q.vec(), r.vec())) > kAreaGuard)) {
        throw GeometryError("degenerate triangle");
    }
    return foot_distance(klein_side_lengths(p, q, r));
}

double delta(const Triangle& t)
{
    return delta(t.p(), t.q(), t.r());
}

double omega(const DiskPoint& r, const DiskPoint& p, const DiskPoint& q)
{
    const double heights = delta(p, q, r) + delta(r, p, q) + delta(q, r, p);
    const double gaps = klein_tangent_gap(p, q) + klein_tangent_gap(r, p) + klein_tangent_gap(q, r);
    return heights / gaps;
}

double omega(const Triangle& t)
{
    return omega(t.r(), t.p(), t.q());
}

HalfPlanePoint to_half_plane(const DiskPoint& p)
{
    // i (z + 1) / (1 - z) = (-2y + i (1 - |z|^2)) / |1 - z|^2
    const double x = p.x();
    const double y = p.y();
    const double den = (1.0 - x) * (1.0 - x) + y * y;
    return {-2.0 * y / den, (1.0 - p.norm2()) / den};
}

double half_plane_distance(const HalfPlanePoint& z, const HalfPlanePoint& w)
{
    const double dx = z.x - w.x;
    const double dy = z.y - w.y;
    return detail::acosh1p((dx * dx + dy * dy) / (2.0 * z.y * w.y));
}

}  // namespace barbilliards::hyperbolic
