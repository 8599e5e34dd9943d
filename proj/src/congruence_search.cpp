#include "barbilliards/congruence_search.hpp"

#include "barbilliards/hyperbolic_models.hpp"
#include "barbilliards/inscribed_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace barbilliards::congruence {

namespace {

using Vertices = std::array<Vec2, 3>;

Vertices vertices_of(const Triangle& t)
{
    return {t.p().vec(), t.q().vec(), t.r().vec()};
}

bool fits(const Vertices& v)
{
    return std::all_of(v.begin(), v.end(), [](Vec2 x) { return x.norm2() < 1.0 - kBoundaryGuard; });
}

Vertices shifted(const Vertices& v, Vec2 tau)
{
    return {v[0] + tau, v[1] + tau, v[2] + tau};
}

struct Lattice {
    std::vector<Vec2> points;
    double spacing = 0.0;
};

Lattice lattice_translations(const Vertices& v, int grid)
{
    if (grid < 2) {
        throw std::invalid_argument("translation grid needs at least 2 points per axis");
    }
    double lo_x = -1.0;
    double hi_x = 1.0;
    double lo_y = -1.0;
    double hi_y = 1.0;
    for (const Vec2 x : v) {
        lo_x = std::max(lo_x, -1.0 - x.x);
        hi_x = std::min(hi_x, 1.0 - x.x);
        lo_y = std::max(lo_y, -1.0 - x.y);
        hi_y = std::min(hi_y, 1.0 - x.y);
    }
    Lattice out;
    if (lo_x > hi_x || lo_y > hi_y) return out;
    const double h = std::max(hi_x - lo_x, hi_y - lo_y) / (grid - 1);
    out.spacing = h;
    if (!(h > 0.0)) {
        if (fits(v)) out.points.push_back({0.0, 0.0});
        return out;
    }
    const auto i0 = static_cast<long>(std::ceil(lo_x / h));
    const auto i1 = static_cast<long>(std::floor(hi_x / h));
    const auto j0 = static_cast<long>(std::ceil(lo_y / h));
    const auto j1 = static_cast<long>(std::floor(hi_y / h));
    for (long j = j0; j <= j1; ++j) {
        for (long i = i0; i <= i1; ++i) {
            const Vec2 tau{static_cast<double>(i) * h, static_cast<double>(j) * h};
            if (fits(shifted(v, tau))) out.points.push_back(tau);
        }
    }
    return out;
}

Lattice sample_translations(const Vertices& v, int samples)
{
    int grid = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples)))) + 1);
    Lattice l = lattice_translations(v, grid);
    while (static_cast<int>(l.points.size()) < samples && grid < 4096) {
        grid = grid + grid / 2 + 1;
        l = lattice_translations(v, grid);
    }
    return l;
}

double triangle_kappa(double a, double b, double c, double twice_area)
{
    const double l = std::max({a, b, c});
    const double sum_sq = a * a + b * b + c * c;
    if (2.0 * l * l < sum_sq) {
        return a * b * c / (2.0 * twice_area);
    }
    return 0.5 * l;
}

}  // namespace

TriangleShape::TriangleShape(double a, double b, double c) : sides_{a, b, c}
{
    for (double s : sides_) {
        if (!std::isfinite(s) || !(s > 0.0)) {
            throw GeometryError("triangle sides must be positive and finite");
        }
    }
    std::sort(sides_.begin(), sides_.end(), std::greater<>());
    if (!(sides_[0] < (sides_[1] + sides_[2]) * (1.0 - 1e-12))) {
        throw GeometryError("sides violate the strict triangle inequality");
    }
    const double l = sides_[0];
    for (double& s : sides_) s /= l;
}

TriangleShape TriangleShape::of(const Triangle& t)
{
    return TriangleShape((t.q().vec() - t.r().vec()).norm(), (t.r().vec() - t.p().vec()).norm(),
                         (t.p().vec() - t.q().vec()).norm());
}

AngleClass TriangleShape::angle_class() const
{
    const double diff = 1.0 - (sides_[1] * sides_[1] + sides_[2] * sides_[2]);
    if (std::abs(diff) <= 1e-12) return AngleClass::Right;
    return diff < 0.0 ? AngleClass::Acute : AngleClass::Obtuse;
}

bool TriangleShape::is_equilateral() const
{
    return std::abs(sides_[1] - 1.0) <= 1e-12 && std::abs(sides_[2] - 1.0) <= 1e-12;
}

double TriangleShape::unit_kappa() const
{
    if (angle_class() != AngleClass::Acute) return 0.5;
    const auto [a, b, c] = sides_;
    const double heron = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
    return a * b * c / std::sqrt(heron);
}

Triangle TriangleShape::realize(double kappa) const
{
    if (!(kappa > 0.0 && kappa < 1.0)) {
        throw GeometryError("kappa must lie in (0, 1) for the triangle to fit in the disk");
    }
    const double s = kappa / unit_kappa();
    const double l = s;
    const double b = s * sides_[1];
    const double c = s * sides_[2];
    // |RP| = b, |RQ| = c with P = (0, l/2), Q = (0, -l/2)
    const double y = (c * c - b * b) / (2.0 * l);
    const double dy = y - 0.5 * l;
    const double x = std::sqrt(std::max(0.0, b * b - dy * dy));
    Vec2 center{0.0, 0.0};
    if (angle_class() == AngleClass::Acute) {
        center = {(x * x + y * y - 0.25 * l * l) / (2.0 * x), 0.0};
    }
    return Triangle(DiskPoint(Vec2{0.0, 0.5 * l} - center), DiskPoint(Vec2{0.0, -0.5 * l} - center),
                    DiskPoint(Vec2{x, y} - center));
}

double kappa(const Triangle& t)
{
    const double a = (t.q().vec() - t.r().vec()).norm();
    const double b = (t.r().vec() - t.p().vec()).norm();
    const double c = (t.p().vec() - t.q().vec()).norm();
    return triangle_kappa(a, b, c, t.twice_area());
}

Vec2 scale_about(Vec2 x, double lambda, Vec2 center)
{
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("scale factor must be positive");
    }
    return (x - center) * lambda + center;
}

Triangle scale_about(const Triangle& t, double lambda, Vec2 center)
{
    return Triangle(DiskPoint(scale_about(t.p().vec(), lambda, center)),
                    DiskPoint(scale_about(t.q().vec(), lambda, center)),
                    DiskPoint(scale_about(t.r().vec(), lambda, center)));
}

Vec2 translate(Vec2 x, Vec2 tau)
{
    return x + tau;
}

Triangle translate(const Triangle& t, Vec2 tau)
{
    return Triangle(DiskPoint(t.p().vec() + tau), DiskPoint(t.q().vec() + tau), DiskPoint(t.r().vec() + tau));
}

Triangle rotate_about(const Triangle& t, double radians, Vec2 center)
{
    const double c = std::cos(radians);
    const double s = std::sin(radians);
    auto rot = [&](Vec2 x) {
        const Vec2 d = x - center;
        return DiskPoint(center + Vec2{c * d.x - s * d.y, s * d.x + c * d.y});
    };
    return Triangle(rot(t.p().vec()), rot(t.q().vec()), rot(t.r().vec()));
}

std::vector<Vec2> admissible_translations(const Triangle& t, int grid)
{
    return lattice_translations(vertices_of(t), grid).points;
}

InvarianceReport congruence_invariance_report(const Triangle& t, const InvarianceOptions& opt)
{
    if (opt.samples < 1) {
        throw std::invalid_argument("need at least one translation sample");
    }
    const int rotations =
        opt.rotations > 0 ? opt.rotations : (TriangleShape::of(t).is_equilateral() ? 1 : 36);
    const Vertices base = vertices_of(t);
    const Vec2 centroid = t.centroid();

    InvarianceReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    auto visit = [&](const Vertices& v, Vec2 tau, double angle) {
        const Vertices w = shifted(v, tau);
        const Triangle copy{DiskPoint(w[0]), DiskPoint(w[1]), DiskPoint(w[2])};
        const inscribed::InscribedCount n = inscribed::count_inscribed(copy);
        ++rep.placements;
        if (n.margin < rep.worst_margin) {
            rep.worst_margin = n.margin;
            rep.worst_translation = tau;
            rep.worst_rotation = angle;
        }
        if (n.m == inscribed::Multiplicity::Zero) rep.all_one_third = false;
        return !(opt.stop_at_violation && !rep.all_one_third);
    };

    if (!visit(base, {0.0, 0.0}, 0.0)) return rep;
    for (int k = 0; k < rotations; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / rotations;
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        Vertices v = base;
        for (Vec2& x : v) {
            const Vec2 d = x - centroid;
            x = centroid + Vec2{c * d.x - s * d.y, s * d.x + c * d.y};
        }
        const Lattice lat = sample_translations(v, opt.samples);
        rep.lattice_spacing = std::max(rep.lattice_spacing, lat.spacing);
        for (const Vec2 tau : lat.points) {
            if (k == 0 && tau.x == 0.0 && tau.y == 0.0) continue;
            if (!visit(v, tau, angle)) return rep;
        }
    }
    return rep;
}

double centered_equilateral_margin(double r)
{
    const double h = r * std::numbers::sqrt3 / 2.0;
    const DiskPoint p(-0.5 * r, h);
    const DiskPoint q(-0.5 * r, -h);
    const DiskPoint x(r, 0.0);
    return hyperbolic::delta(p, q, x) - hyperbolic::klein_tangent_gap(p, q);
}

MuEstimate mu_estimate(const TriangleShape& shape, double tol, const InvarianceOptions& opt)
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("mu tolerance must be positive");
    }
    InvarianceOptions probe = opt;
    probe.stop_at_violation = true;

    MuEstimate est;
    est.samples = opt.samples;
    double lo = 1e-3;
    double hi = 1.0 - 1e-6;
    auto universal = [&](double k, double* spacing) {
        const InvarianceReport rep = congruence_invariance_report(shape.realize(k), probe);
        if (spacing != nullptr) *spacing = rep.lattice_spacing;
        return rep.all_one_third;
    };
    if (universal(lo, nullptr)) {
        throw MuSearchError("every sampled placement is already universal at the smallest scale",
                            {0.0, lo, opt.samples, 0.0, 0});
    }
    double spacing = 0.0;
    if (!universal(hi, &spacing)) {
        throw MuSearchError("a violating placement persists at the largest scale",
                            {hi, 1.0, opt.samples, spacing, 0});
    }
    constexpr int kMaxIterations = 200;
    while (hi - lo > tol) {
        if (est.iterations == kMaxIterations) {
            throw MuSearchError("mu bisection did not reach the tolerance",
                                {lo, hi, opt.samples, spacing, est.iterations});
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            throw MuSearchError("mu tolerance is below floating-point resolution",
                                {lo, hi, opt.samples, spacing, est.iterations});
        }
        double mid_spacing = 0.0;
        if (universal(mid, &mid_spacing)) {
            hi = mid;
            spacing = mid_spacing;
        } else {
            lo = mid;
        }
        ++est.iterations;
    }
    est.lower = lo;
    est.upper = hi;
    est.grid_resolution = spacing;
    return est;
}

}  // namespace barbilliards::congruence
