#pragma once

// Distances and conversions for the Poincare disk, the Beltrami-Klein disk
// and the upper half-plane.
//
// Poincare disk:  ds^2 = 4 (dx^2 + dy^2) / (1 - x^2 - y^2)^2
// Klein disk:     geodesics are straight chords; distance from the
//                 cross-ratio with the two chord endpoints.
// Half-plane:     ds^2 = (dx^2 + dy^2) / y^2, reached by z -> i(z+1)/(1-z).
//                 Only used as an independent check of the disk formulas.

#include "barbilliards/geometry.hpp"

namespace barbilliards::hyperbolic {

/// arccosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2))). Exactly symmetric.
double poincare_distance(const DiskPoint& p, const DiskPoint& q);

/// log((e^d + 1)/(e^d - 1)) = log coth(d/2). An involution on (0, inf).
/// Throws std::domain_error for d <= 0.
double tangent_gap(double d);

/// Poincare -> Klein, (x, y) -> 2(x, y)/(1 + x^2 + y^2).
DiskPoint to_klein(const DiskPoint& p);
/// Klein -> Poincare, (x, y) -> (x, y)/(1 + sqrt(1 - x^2 - y^2)).
DiskPoint from_klein(const DiskPoint& p);

/// Where the chord through p and q meets the unit circle. `near_p` lies
/// beyond p (on the p side of the segment), `near_q` beyond q.
struct ChordEndpoints {
    BoundaryPoint near_p;
    BoundaryPoint near_q;
};

/// Throws GeometryError when p and q are closer than 1e-12.
ChordEndpoints klein_chord_endpoints(const DiskPoint& p, const DiskPoint& q);

/// Klein distance d'(p, q) = 1/2 |log(|v1 q||v2 p| / (|v1 p||v2 q|))|.
/// Zero for p == q. Exactly symmetric.
double klein_distance(const DiskPoint& p, const DiskPoint& q);

/// tangent_gap(klein_distance(p, q)). Throws std::domain_error for p == q.
double klein_tangent_gap(const DiskPoint& p, const DiskPoint& q);

/// Hyperbolic side lengths of a triangle PQR: alpha = |QR|, beta = |RP|,
/// gamma = |PQ|.
struct SideLengths {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Klein side lengths of the triangle p, q, r.
SideLengths klein_side_lengths(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r);

/// Hyperbolic distance from R to the full geodesic PQ given the three side
/// lengths. Evaluated from the right-triangle relation
///   sinh h = sinh(alpha) sin(Q),
/// which simplifies to
///   sinh h = 2 sqrt(sinh s sinh(s-alpha) sinh(s-beta) sinh(s-gamma)) / sinh gamma
/// with s the half perimeter. Throws std::domain_error if gamma <= 0 or the
/// triangle inequality fails by more than 1e-10.
double foot_distance(const SideLengths& sides);

/// delta(P, Q, R): Klein distance from r to the line pq. Throws
/// GeometryError for coincident or collinear points.
double delta(const DiskPoint& p, const DiskPoint& q, const DiskPoint& r);
double delta(const Triangle& t);

/// Sum of the three vertex-to-opposite-side distances over the sum of the
/// three side tangent gaps. Symmetric in its arguments.
double omega(const DiskPoint& r, const DiskPoint& p, const DiskPoint& q);
double omega(const Triangle& t);

/// A point of the upper half-plane.
struct HalfPlanePoint {
    double x = 0.0;
    double y = 0.0;
};

HalfPlanePoint to_half_plane(const DiskPoint& p);
/// arccosh(1 + |z - w|^2 / (2 Im z Im w)).
double half_plane_distance(const HalfPlanePoint& z, const HalfPlanePoint& w);

namespace detail {
// Unchecked variants on raw vectors; callers guarantee |v| < 1.
double poincare_distance(Vec2 p, Vec2 q);
double klein_distance(Vec2 p, Vec2 q);
Vec2 to_klein(Vec2 p);
Vec2 from_klein(Vec2 p);
/// Numerically stable arccosh(1 + w) for w >= 0.
double acosh1p(double w);
}  // namespace detail

}  // namespace barbilliards::hyperbolic
