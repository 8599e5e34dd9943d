#pragma once

// How many triangles inscribed in the unit circle circumscribe a given
// triangle PQR (0, 1 or 2), decided three ways:
//
//  * comparing the Klein height delta(P,Q,R) with the tangent gap of PQ,
//  * comparing the ratio omega of the three heights to the three gaps with 1,
//  * locating R relative to the tangency ellipse E of the chord PQ.
//
// The ellipse is expressed in a chord frame {T3, T4}: T1, T2 are the
// endpoints of the chord PQ, T3 the midpoint of the arc from T2 to T1 and
// T4 = T3 + 1/4 turn, with T3 - T2 in (0, 1/2] turns. Both T3 directions
// normal to the chord meet this rule (with T1, T2 swapped); the canonical
// frame takes T3 pointing from the origin towards the chord, so u >= 0.

#include "barbilliards/geometry.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace barbilliards::inscribed {

inline constexpr double kDefaultBand = 1e-9;

enum class Multiplicity { Zero = 0, One = 1, Two = 2 };

/// Three-way classification with the signed quantity it was read from.
/// `margin` is delta - gap for count_inscribed, omega - 1 for the omega
/// variant, and an approximate signed Euclidean distance from the ellipse
/// for the ellipse variant. Positive margins mean two triangles.
struct InscribedCount {
    Multiplicity m = Multiplicity::Zero;
    double margin = 0.0;
    double boundary_band = kDefaultBand;

    int count() const { return static_cast<int>(m); }
};

/// Zero below -band, Two above band, One inside the band.
InscribedCount classify_margin(double margin, double band);

InscribedCount count_inscribed(const Triangle& t, double band = kDefaultBand);
InscribedCount count_inscribed_via_omega(const Triangle& t, double band = kDefaultBand);
InscribedCount classify_via_ellipse(const Triangle& t, double band = kDefaultBand);

class ChordFrame {
public:
    /// Builds the frame from the chord direction; `axis` is the unit normal
    /// to the chord that becomes T3.
    ChordFrame(Vec2 axis, double u);

    BoundaryPoint t1() const { return BoundaryPoint::from_cartesian(corner(+1.0)); }
    BoundaryPoint t2() const { return BoundaryPoint::from_cartesian(corner(-1.0)); }
    BoundaryPoint t3() const { return BoundaryPoint::from_cartesian(e1_); }
    BoundaryPoint t4() const { return BoundaryPoint::from_cartesian(e2_); }
    /// Signed distance from the origin to the chord along T3.
    double u() const { return u_; }

    Vec2 axis() const { return e1_; }
    Vec2 normal() const { return e2_; }
    /// Cartesian positions of T1 and T2.
    Vec2 t1_cartesian() const { return corner(+1.0); }
    Vec2 t2_cartesian() const { return corner(-1.0); }

    Vec2 to_frame(Vec2 world) const { return {dot(world, e1_), dot(world, e2_)}; }
    Vec2 to_world(Vec2 framed) const { return e1_ * framed.x + e2_ * framed.y; }

    /// Same chord with T3 and T4 turned by half a turn, u negated and
    /// T1, T2 exchanged.
    ChordFrame reversed() const;

private:
    Vec2 corner(double side) const;

    Vec2 e1_;
    Vec2 e2_;
    double u_;
};

/// Canonical frame of the chord through p and q (Klein points).
/// Throws GeometryError for coincident points.
ChordFrame chord_frame(const DiskPoint& p, const DiskPoint& q);

/// Semi-axis `a` along T3, semi-axis `b` along T4, center offset `c`
/// along T3.
struct EllipseAxes {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Coefficients from the frame coordinates P = (u, p), Q = (u, q).
EllipseAxes ellipse_axes_from_chord(double u, double p, double q);
/// Coefficients from k = e^{d'(P,Q)} and u.
EllipseAxes ellipse_axes_from_distance(double k, double u);
/// Coefficients from the arc-center scalar `a` of the matching Poincare arc.
EllipseAxes ellipse_axes_from_arc_center(double a, double u);

struct TangencyEllipse {
    ChordFrame frame;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// (x1 - c)^2 / a^2 + x2^2 / b^2 - 1 at a world point.
    double form(Vec2 world) const;
    /// World-space gradient of form().
    Vec2 gradient(Vec2 world) const;
    /// form / |gradient|: first-order signed distance, positive outside.
    double signed_distance(Vec2 world) const;
    Vec2 center() const { return frame.to_world({c, 0.0}); }
    /// Point at parameter angle s (radians) of the standard parametrization.
    Vec2 point_at(double s) const;
};

/// Ellipse E of the chord pq in the canonical frame.
TangencyEllipse tangency_ellipse(const DiskPoint& p, const DiskPoint& q);
/// The same ellipse described in a caller-chosen frame of the chord pq
/// (for instance chord_frame(p, q).reversed()).
TangencyEllipse tangency_ellipse(const DiskPoint& p, const DiskPoint& q, const ChordFrame& frame);

/// A line a x + b y + c = 0 in world coordinates.
struct Line {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double eval(Vec2 v) const { return a * v.x + b * v.y + c; }
};

/// The line u2u3, where u1 = (cos theta, sin theta) and the lines u1 p,
/// u1 q meet the circle again at u2, u3.
Line envelope_line(const DiskPoint& p, const DiskPoint& q, double theta);

/// Point where envelope_line(theta) touches the envelope of the family
/// (solution of F = 0, dF/dtheta = 0). Empty when the 2x2 system is
/// singular to working precision.
std::optional<Vec2> envelope_point(const DiskPoint& p, const DiskPoint& q, double theta);

struct ArcCircle {
    Vec2 center;
    double radius = 0.0;

    double signed_distance(Vec2 v) const { return (v - center).norm() - radius; }
};

/// Centers along T3 of the two arcs bounding the region, scalar multiples
/// of T3. First: the arc nearer T3.
std::pair<double, double> arc_center_scalars(double k, double u);

/// The two circles carrying the boundary arcs C1 (nearer T3) and C2 of the
/// Poincare region, for Poincare points p and q.
std::pair<ArcCircle, ArcCircle> poincare_arcs(const DiskPoint& p, const DiskPoint& q);

using InscribedTriangle = std::array<BoundaryPoint, 3>;

struct InscribedTriangles {
    std::vector<InscribedTriangle> triangles;
    InscribedCount count;
    /// Set when a tangential (double) period-3 root had to be accepted with
    /// the widened tolerance of the boundary band.
    bool widened_tolerance = false;
};

/// The inscribed triangles circumscribing t, read off the period-3 orbits
/// of the tangent circle map.
InscribedTriangles construct_inscribed_triangles(const Triangle& t, double band = kDefaultBand);

namespace detail {
ChordFrame chord_frame(Vec2 p, Vec2 q);
}

}  // namespace barbilliards::inscribed
