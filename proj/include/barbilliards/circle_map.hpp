#pragma once

// The bar-billiard map psi on S^1 = R/Z around a triangular obstacle: from
// v follow the tangent line to the triangle that reaches the circle again
// after the shorter counterclockwise arc.

#include "barbilliards/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace barbilliards::circle_map {

/// A real number split as winding + frac with frac in [0, 1). Keeping the
/// integer part separate makes psi_lift(x + 1) == psi_lift(x) + 1 hold
/// exactly.
struct Lift {
    std::int64_t winding = 0;
    double frac = 0.0;

    static Lift from_value(double x);
    static Lift from_angle(CircleAngle a) { return {0, a.turns()}; }

    double value() const { return static_cast<double>(winding) + frac; }
    CircleAngle angle() const { return CircleAngle(frac); }

    Lift operator+(std::int64_t k) const { return {winding + k, frac}; }
    auto operator<=>(const Lift&) const = default;
};

/// Indices (0 = p, 1 = q, 2 = r) of the two vertices bounding the cone of
/// directions from v towards the triangle. `first` is the most clockwise
/// one, through which the tangent line of psi passes; on a tie the farther
/// vertex is taken.
std::pair<int, int> supporting_vertices(const Triangle& t, CircleAngle v);

CircleAngle psi(const Triangle& t, CircleAngle v);
/// d psi / dv in turns per turn; equals |W - X| / |V - X| for the tangent
/// chord VW through the supporting vertex X.
double psi_derivative(const Triangle& t, CircleAngle v);

/// The lift with psi_lift(0) in (0, 1).
Lift psi_lift(const Triangle& t, Lift x);

/// [v0, psi(v0), ..., psi^n(v0)].
std::vector<CircleAngle> iterate_orbit(const Triangle& t, CircleAngle v0, int n);

struct RotationEstimate {
    double value = 0.0;
    double error_bound = 0.0;
    bool exact_one_third = false;
    int iterations = 0;
};

/// psi_lift^n(0) / n with the bound 1/n. exact_one_third comes from the
/// classifier (at least one inscribed triangle).
RotationEstimate rotation_number(const Triangle& t, int n = 100000);

/// g(x) = psi_lift^3(x) - x - 1 and its derivative.
double period3_gap(const Triangle& t, double x);
double period3_gap_derivative(const Triangle& t, double x);

enum class Stability { Attracting, Repelling, SemiStable };

struct Period3Orbit {
    /// Sorted by turns.
    std::array<CircleAngle, 3> points;
    /// g'(x) at the first point; equal at all three up to rounding.
    double slope = 0.0;
    /// Largest |g| over the three points.
    double residual = 0.0;
    Stability stability = Stability::SemiStable;
    /// A double root of g, located by minimizing |g| instead of bracketing a
    /// sign change.
    bool tangential = false;
};

inline constexpr int kScanSamples = 720;
inline constexpr double kMergeDistance = 1e-6;
inline constexpr double kMinWidth = 1e-8;
inline constexpr double kFlatSlope = 1e-3;
inline constexpr double kRootResidual = 1e-12;

/// Roots of g on [0, 1) grouped into psi-orbits. A 720-point scan is
/// subdivided wherever g' > -1 cannot exclude a root, down to kMinWidth;
/// sign changes are bisected to adjacent doubles. Double roots are extrema
/// with |g| <= 1e-12, or two flat crossings closer than kMergeDistance.
std::vector<Period3Orbit> find_period3_orbits(const Triangle& t);

/// The orbit through the extremum of g closest to zero. Used when the
/// classifier puts a triangle on the boundary band but the scan saw zero or
/// two orbits.
Period3Orbit tangential_orbit(const Triangle& t);

enum class DynamicsCase { BoundaryCase, InteriorCase, HighRotation };

/// An arc of S^1 whose points converge to `target` under psi^3. The arc
/// runs counterclockwise from `start` to `end`.
struct BasinArc {
    CircleAngle start;
    CircleAngle end;
    CircleAngle target;
    bool includes_start = false;
    bool includes_end = false;
};

struct DynamicsReport {
    DynamicsCase kind = DynamicsCase::HighRotation;
    /// InteriorCase: the stable orbit. BoundaryCase: the semi-stable orbit.
    std::optional<std::array<CircleAngle, 3>> attractor;
    /// InteriorCase only.
    std::optional<std::array<CircleAngle, 3>> repeller;
    std::vector<BasinArc> basins;
};

DynamicsReport classify_dynamics(const Triangle& t);

/// psi^3, the return map whose fixed points are the period-3 orbits.
CircleAngle psi3(const Triangle& t, CircleAngle v);

}  // namespace barbilliards::circle_map
