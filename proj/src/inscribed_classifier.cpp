#include "barbilliards/inscribed_classifier.hpp"

#include "barbilliards/circle_map.hpp"
#include "barbilliards/hyperbolic_models.hpp"

#include <cmath>

namespace barbilliards::inscribed {

namespace {

// Prop-style coefficients with the factors 1 - |P|^2, 1 - |Q|^2 supplied
// directly, so points near the circle keep their relative accuracy.
EllipseAxes axes_from_chord(double u, double p, double q, double mp, double mq)
{
    const double m = p * q + u * u - 1.0;
    const double den = m * m + u * u * (p - q) * (p - q);
    return {std::sqrt(mp * mq) * std::abs(m) / den, std::abs(m) / std::sqrt(den),
            u * (p - q) * (p - q) / den};
}

struct FrameLine {
    double cx;
    double cy;
    double c0;
};

// Line u2u3 in frame coordinates for P = (u, p), Q = (u, q) and
// u1 = (cos t, sin t) in the frame. The second form is d/dt.
FrameLine frame_line(double u, double p, double q, double t)
{
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double sum = p + q;
    const double prod = p * q;
    return {(u * u + 1.0 - prod) * c + sum * u * s - 2.0 * u,
            sum * u * c + (1.0 + prod - u * u) * s - sum,
            -2.0 * u * c - sum * s + prod + u * u + 1.0};
}

FrameLine frame_line_derivative(double u, double p, double q, double t)
{
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double sum = p + q;
    const double prod = p * q;
    return {-(u * u + 1.0 - prod) * s + sum * u * c,
            -sum * u * s + (1.0 + prod - u * u) * c,
            2.0 * u * s - sum * c};
}

struct FramedChord {
    ChordFrame frame;
    double u;
    double p;
    double q;
    double theta;
};

FramedChord framed(const DiskPoint& p, const DiskPoint& q, double theta)
{
    const ChordFrame frame = chord_frame(p, q);
    const Vec2 axis = frame.axis();
    return {frame, frame.u(), dot(p.vec(), frame.normal()), dot(q.vec(), frame.normal()),
            theta - std::atan2(axis.y, axis.x)};
}

}  // namespace

InscribedCount classify_margin(double margin, double band)
{
    if (!(band >= 0.0)) {
        throw std::invalid_argument("boundary band must be nonnegative");
    }
    Multiplicity m = Multiplicity::One;
    if (margin < -band) {
        m = Multiplicity::Zero;
    } else if (margin > band) {
        m = Multiplicity::Two;
    }
    return {m, margin, band};
}

InscribedCount count_inscribed(const Triangle& t, double band)
{
    const double margin = hyperbolic::delta(t) - hyperbolic::klein_tangent_gap(t.p(), t.q());
    return classify_margin(margin, band);
}

InscribedCount count_inscribed_via_omega(const Triangle& t, double band)
{
    return classify_margin(hyperbolic::omega(t) - 1.0, band);
}

InscribedCount classify_via_ellipse(const Triangle& t, double band)
{
    const TangencyEllipse e = tangency_ellipse(t.p(), t.q());
    return classify_margin(e.signed_distance(t.r().vec()), band);
}

ChordFrame::ChordFrame(Vec2 axis, double u) : e1_(axis), e2_(perp(axis)), u_(u)
{
    if (!(std::abs(u) < 1.0)) {
        throw GeometryError("chord does not meet the open disk");
    }
}

Vec2 ChordFrame::corner(double side) const
{
    const double w = std::sqrt((1.0 - u_) * (1.0 + u_));
    return e1_ * u_ + e2_ * (side * w);
}

ChordFrame ChordFrame::reversed() const
{
    return ChordFrame(-e1_, -u_);
}

namespace detail {

ChordFrame chord_frame(Vec2 p, Vec2 q)
{
    const Vec2 d = q - p;
    const double len = d.norm();
    if (len <= 1e-12) {
        throw GeometryError("degenerate chord: coincident points");
    }
    Vec2 n = perp(d) / len;
    double u = 0.5 * (dot(n, p) + dot(n, q));
    if (u < 0.0) {
        n = -n;
        u = -u;
    }
    return ChordFrame(n, u);
}

}  // namespace detail

ChordFrame chord_frame(const DiskPoint& p, const DiskPoint& q)
{
    return detail::chord_frame(p.vec(), q.vec());
}

EllipseAxes ellipse_axes_from_chord(double u, double p, double q)
{
    return axes_from_chord(u, p, q, 1.0 - u * u - p * p, 1.0 - u * u - q * q);
}

EllipseAxes ellipse_axes_from_distance(double k, double u)
{
    const double k2 = k * k;
    const double den = (k2 - 2.0 * k * u + 1.0) * (k2 + 2.0 * k * u + 1.0);
    const double w2 = (1.0 - u) * (1.0 + u);
    return {2.0 * k * (k2 + 1.0) * w2 / den, (k2 + 1.0) * std::sqrt(w2 / den),
            (k2 - 1.0) * (k2 - 1.0) * u / den};
}

EllipseAxes ellipse_axes_from_arc_center(double a, double u)
{
    const double r2 = a * a - 2.0 * u * a + 1.0;
    const double den = (u * u + 1.0) * a * a - 2.0 * a * u + 1.0;
    return {std::abs(a * u - 1.0) * std::sqrt(r2) / den, std::sqrt(r2 / den), a * a * u / den};
}

double TangencyEllipse::form(Vec2 world) const
{
    const Vec2 x = frame.to_frame(world);
    const double s = (x.x - c) / a;
    const double t = x.y / b;
    return s * s + t * t - 1.0;
}

Vec2 TangencyEllipse::gradient(Vec2 world) const
{
    const Vec2 x = frame.to_frame(world);
    return frame.to_world({2.0 * (x.x - c) / (a * a), 2.0 * x.y / (b * b)});
}

double TangencyEllipse::signed_distance(Vec2 world) const
{
    const double g = gradient(world).norm();
    const double f = form(world);
    return g > 0.0 ? f / g : f;
}

Vec2 TangencyEllipse::point_at(double s) const
{
    return frame.to_world({c + a * std::cos(s), b * std::sin(s)});
}

TangencyEllipse tangency_ellipse(const DiskPoint& p, const DiskPoint& q)
{
    return tangency_ellipse(p, q, chord_frame(p, q));
}

TangencyEllipse tangency_ellipse(const DiskPoint& p, const DiskPoint& q, const ChordFrame& frame)
{
    if ((q.vec() - p.vec()).norm() <= 1e-12) {
        throw GeometryError("degenerate chord: coincident points");
    }
    const Vec2 pf = frame.to_frame(p.vec());
    const Vec2 qf = frame.to_frame(q.vec());
    const EllipseAxes ax = axes_from_chord(frame.u(), pf.y, qf.y, 1.0 - p.norm2(), 1.0 - q.norm2());
    return {frame, ax.a, ax.b, ax.c};
}

Line envelope_line(const DiskPoint& p, const DiskPoint& q, double theta)
{
    const FramedChord fc = framed(p, q, theta);
    const FrameLine l = frame_line(fc.u, fc.p, fc.q, fc.theta);
    const Vec2 n = fc.frame.to_world({l.cx, l.cy});
    return {n.x, n.y, l.c0};
}

std::optional<Vec2> envelope_point(const DiskPoint& p, const DiskPoint& q, double theta)
{
    const FramedChord fc = framed(p, q, theta);
    const FrameLine l = frame_line(fc.u, fc.p, fc.q, fc.theta);
    const FrameLine dl = frame_line_derivative(fc.u, fc.p, fc.q, fc.theta);
    const double det = l.cx * dl.cy - l.cy * dl.cx;
    const double scale = std::hypot(l.cx, l.cy) * std::hypot(dl.cx, dl.cy);
    if (!(std::abs(det) > 1e-14 * scale)) {
        return std::nullopt;
    }
    const double x = (-l.c0 * dl.cy + l.cy * dl.c0) / det;
    const double y = (-l.cx * dl.c0 + l.c0 * dl.cx) / det;
    return fc.frame.to_world({x, y});
}

std::pair<double, double> arc_center_scalars(double k, double u)
{
    // (k^2 - 1) / (u (k^2 - 1) -+ 2k sqrt(1 - u^2)), divided through by 2k
    const double sh = 0.5 * (k - 1.0 / k);
    const double w = std::sqrt((1.0 - u) * (1.0 + u));
    return {sh / (u * sh - w), sh / (u * sh + w)};
}

std::pair<ArcCircle, ArcCircle> poincare_arcs(const DiskPoint& p, const DiskPoint& q)
{
    if ((q.vec() - p.vec()).norm() <= 1e-12) {
        throw GeometryError("degenerate chord: coincident points");
    }
    const ChordFrame frame =
        detail::chord_frame(hyperbolic::detail::to_klein(p.vec()), hyperbolic::detail::to_klein(q.vec()));
    const double k = std::exp(hyperbolic::poincare_distance(p, q));
    const double u = frame.u();
    const auto [a1, a2] = arc_center_scalars(k, u);
    auto circle = [&](double a) {
        return ArcCircle{frame.axis() * a, std::sqrt(a * a - 2.0 * a * u + 1.0)};
    };
    return {circle(a1), circle(a2)};
}

InscribedTriangles construct_inscribed_triangles(const Triangle& t, double band)
{
    InscribedTriangles out;
    out.count = count_inscribed(t, band);
    std::vector<circle_map::Period3Orbit> orbits = circle_map::find_period3_orbits(t);
    if (out.count.m == Multiplicity::One && orbits.size() != 1) {
        orbits = {circle_map::tangential_orbit(t)};
        out.widened_tolerance = true;
    } else if (out.count.m == Multiplicity::One && orbits.front().tangential) {
        out.widened_tolerance = true;
    }
    for (const auto& o : orbits) {
        out.triangles.push_back({BoundaryPoint(o.points[0]), BoundaryPoint(o.points[1]),
                                 BoundaryPoint(o.points[2])});
    }
    return out;
}

}  // namespace barbilliards::inscribed
