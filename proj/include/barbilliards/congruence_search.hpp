#pragma once

// Euclidean similarity and congruence of triangular obstacles, the scale
// kappa and the critical scale mu above which every congruent placement in
// the disk has rotation number 1/3.
//
// kappa(t) is the circumradius of an acute triangle and half its longest
// side otherwise, i.e. the radius of the smallest disk containing t.

#include "barbilliards/geometry.hpp"

#include <stdexcept>
#include <vector>

namespace barbilliards::congruence {

enum class AngleClass { Acute, Right, Obtuse };

/// Similarity class of a triangle: side lengths scaled so the longest is 1,
/// stored longest first.
class TriangleShape {
public:
    /// Throws GeometryError unless the triangle inequality holds strictly.
    TriangleShape(double a, double b, double c);

    static TriangleShape equilateral() { return TriangleShape(1.0, 1.0, 1.0); }
    static TriangleShape of(const Triangle& t);

    const std::array<double, 3>& sides() const { return sides_; }
    AngleClass angle_class() const;
    bool is_equilateral() const;

    /// kappa of the unit-longest-side representative.
    double unit_kappa() const;

    /// The placement with kappa(t) = kappa whose smallest enclosing disk is
    /// centered at the origin: longest side PQ vertical on the left, R on the
    /// right. The equilateral shape at kappa = 1/2 gives
    /// P = (-1/4, sqrt3/4), Q = (-1/4, -sqrt3/4), R = (1/2, 0).
    Triangle realize(double kappa) const;

private:
    std::array<double, 3> sides_;
};

double kappa(const Triangle& t);

/// lambda (x - center) + center. Throws std::invalid_argument for
/// lambda <= 0.
Vec2 scale_about(Vec2 x, double lambda, Vec2 center);
Triangle scale_about(const Triangle& t, double lambda, Vec2 center);

Vec2 translate(Vec2 x, Vec2 tau);
Triangle translate(const Triangle& t, Vec2 tau);

/// Rotation by `radians` about `center`.
Triangle rotate_about(const Triangle& t, double radians, Vec2 center);

/// Translations tau on a lattice through 0 for which t + tau stays strictly
/// inside the disk. The lattice spacing is the larger side of the bounding
/// box of that set divided by grid - 1.
std::vector<Vec2> admissible_translations(const Triangle& t, int grid);

struct InvarianceReport {
    /// Every sampled copy has at least one inscribed triangle.
    bool all_one_third = true;
    double worst_margin = 0.0;
    Vec2 worst_translation;
    double worst_rotation = 0.0;
    int placements = 0;
    /// Largest lattice spacing over the sampled orientations.
    double lattice_spacing = 0.0;
};

struct InvarianceOptions {
    /// Minimum number of translations per orientation.
    int samples = 1000;
    /// Orientations about the centroid; 0 picks 1 for equilateral
    /// triangles and 36 otherwise.
    int rotations = 0;
    /// Return at the first copy with no inscribed triangle.
    bool stop_at_violation = false;
};

/// Classifies sampled congruent copies of t. The untranslated copy is
/// evaluated first.
InvarianceReport congruence_invariance_report(const Triangle& t, const InvarianceOptions& opt = {});

/// delta - gap of the equilateral triangle with Klein circumradius r
/// centered at the origin, one vertex at (r, 0).
double centered_equilateral_margin(double r);

struct MuEstimate {
    double lower = 0.0;
    double upper = 0.0;
    /// Translations per orientation at each probed scale.
    int samples = 0;
    /// Lattice spacing used at the final upper scale.
    double grid_resolution = 0.0;
    int iterations = 0;
};

/// Raised when bisection stops before reaching the tolerance.
class MuSearchError : public std::runtime_error {
public:
    MuSearchError(const std::string& what, MuEstimate partial)
        : std::runtime_error(what), partial_(partial) {}
    const MuEstimate& partial() const { return partial_; }

private:
    MuEstimate partial_;
};

/// Bisection on kappa in [1e-3, 1 - 1e-6] for the smallest scale at which
/// every sampled placement has rotation number 1/3. Throws
/// std::invalid_argument for tol <= 0.
MuEstimate mu_estimate(const TriangleShape& shape, double tol, const InvarianceOptions& opt = {});

}  // namespace barbilliards::congruence
