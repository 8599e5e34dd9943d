#include "barbilliards/hyperbolic_models.hpp"
#include "barbilliards/inscribed_classifier.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace barbilliards;
using namespace barbilliards::inscribed;
using bbtest::kSqrt3;

namespace {

const DiskPoint kP(-0.25, kSqrt3 / 4.0);
const DiskPoint kQ(-0.25, -kSqrt3 / 4.0);

double turns_diff(CircleAngle a, CircleAngle b)
{
    return ccw_arc(b, a);
}

Triangle mirrored(const Triangle& t)
{
    auto m = [](const DiskPoint& p) { return DiskPoint(p.x(), -p.y()); };
    return Triangle(m(t.p()), m(t.q()), m(t.r()));
}

// Distance from a line through a, b to the nearest of the triangle's
// vertices, and whether all vertices lie on the side of `opposite`.
std::pair<double, bool> side_contact(Vec2 a, Vec2 b, Vec2 opposite, const Triangle& t)
{
    const Vec2 d = b - a;
    const double len = d.norm();
    const double origin_side = cross(d, opposite - a);
    double nearest = 1e300;
    bool inside = true;
    for (const auto& v : t.vertices()) {
        const double c = cross(d, v.vec() - a) / len;
        nearest = std::min(nearest, std::abs(c));
        if (c * origin_side < 0.0 && std::abs(c) > 1e-9) inside = false;
    }
    return {nearest, inside};
}

}  // namespace

TEST(CountInscribed, ReferenceTriangles)
{
    const InscribedCount one = count_inscribed(bbtest::example_triangle());
    EXPECT_EQ(one.m, Multiplicity::One);
    EXPECT_NEAR(one.margin, 0.0, 1e-14);
    EXPECT_EQ(one.boundary_band, kDefaultBand);

    const InscribedCount two = count_inscribed(bbtest::centered_equilateral(0.75));
    EXPECT_EQ(two.m, Multiplicity::Two);
    EXPECT_NEAR(two.margin, 1.011435595095720815, 1e-13);

    const InscribedCount zero = count_inscribed(bbtest::centered_equilateral(0.1));
    EXPECT_EQ(zero.m, Multiplicity::Zero);
    EXPECT_NEAR(zero.margin, -2.2947974871013100337, 1e-13);
}

TEST(CountInscribed, BandSemantics)
{
    EXPECT_EQ(classify_margin(-2e-9, 1e-9).m, Multiplicity::Zero);
    EXPECT_EQ(classify_margin(-1e-9, 1e-9).m, Multiplicity::One);
    EXPECT_EQ(classify_margin(1e-9, 1e-9).m, Multiplicity::One);
    EXPECT_EQ(classify_margin(2e-9, 1e-9).m, Multiplicity::Two);
    EXPECT_EQ(classify_margin(0.0, 0.0).m, Multiplicity::One);
    EXPECT_THROW(classify_margin(0.0, -1.0), std::invalid_argument);
}

TEST(CountInscribed, AllVariantsOnReferenceTriangles)
{
    const Triangle one = bbtest::example_triangle();
    EXPECT_EQ(count_inscribed_via_omega(one).m, Multiplicity::One);
    EXPECT_EQ(classify_via_ellipse(one).m, Multiplicity::One);
    EXPECT_EQ(count_inscribed_via_omega(bbtest::centered_equilateral(0.75)).m, Multiplicity::Two);
    EXPECT_EQ(classify_via_ellipse(bbtest::centered_equilateral(0.75)).m, Multiplicity::Two);
    EXPECT_EQ(count_inscribed_via_omega(bbtest::centered_equilateral(0.1)).m, Multiplicity::Zero);
    EXPECT_EQ(classify_via_ellipse(bbtest::centered_equilateral(0.1)).m, Multiplicity::Zero);
}

TEST(CountInscribed, RelabelingAndMirrorInvariance)
{
    bbtest::Sampler s(21);
    for (int i = 0; i < 2000; ++i) {
        const Triangle t = s.triangle();
        const InscribedCount c = count_inscribed(t);
        if (std::abs(c.margin) < 1e-6) continue;
        for (int k = 1; k < 3; ++k) {
            EXPECT_EQ(count_inscribed(t.rotated_labels(k)).m, c.m);
        }
        const Triangle m = mirrored(t);
        for (int k = 0; k < 3; ++k) {
            EXPECT_EQ(count_inscribed(m.rotated_labels(k)).m, c.m);
        }
    }
}

TEST(CountInscribed, AgreesWithHalfPlaneDiscriminant)
{
    bbtest::Sampler s(22);
    int checked = 0;
    for (int i = 0; i < 5000; ++i) {
        const Triangle t = s.triangle();
        const InscribedCount c = count_inscribed(t);
        if (std::abs(c.margin) < 1e-6) continue;
        const long double disc = bbtest::half_plane_discriminant(t);
        EXPECT_EQ(c.m == Multiplicity::Two, disc > 0) << c.margin << " " << static_cast<double>(disc);
        ++checked;
    }
    EXPECT_GT(checked, 4000);
}

TEST(ChordFrame, ReferenceChords)
{
    const ChordFrame f = chord_frame(kP, kQ);
    EXPECT_NEAR(f.u(), 0.25, 1e-15);
    EXPECT_NEAR(f.t3().cartesian().x, -1.0, 1e-15);
    EXPECT_NEAR(f.t1_cartesian().x, -0.25, 1e-15);
    EXPECT_NEAR(f.t1_cartesian().y, -std::sqrt(15.0) / 4.0, 1e-15);

    // The other admissible frame: T3 = (1, 0), u = -1/4, T1 in the upper
    // half.
    const ChordFrame r = f.reversed();
    EXPECT_NEAR(r.u(), -0.25, 1e-15);
    EXPECT_NEAR(r.t3().cartesian().x, 1.0, 1e-15);
    EXPECT_NEAR(r.t1_cartesian().x, -0.25, 1e-15);
    EXPECT_NEAR(r.t1_cartesian().y, std::sqrt(15.0) / 4.0, 1e-15);
    EXPECT_NEAR(r.t2_cartesian().y, -std::sqrt(15.0) / 4.0, 1e-15);

    const ChordFrame d = chord_frame(DiskPoint(0.3, 0.3), DiskPoint(-0.2, -0.2));
    EXPECT_NEAR(d.u(), 0.0, 1e-16);

    const ChordFrame v = chord_frame(DiskPoint(0.5, 0.3), DiskPoint(0.5, -0.3));
    EXPECT_NEAR(v.u(), 0.5, 1e-16);
    EXPECT_NEAR(v.t3().cartesian().x, 1.0, 1e-16);

    EXPECT_THROW(chord_frame(kP, kP), GeometryError);
}

TEST(ChordFrame, Invariants)
{
    bbtest::Sampler s(23);
    for (int i = 0; i < 2000; ++i) {
        const DiskPoint p = s.disk_point();
        const DiskPoint q = s.disk_point();
        for (const ChordFrame& f : {chord_frame(p, q), chord_frame(p, q).reversed()}) {
            const CircleAngle t1 = f.t1().angle();
            const CircleAngle t2 = f.t2().angle();
            const CircleAngle t3 = f.t3().angle();
            const double d32 = turns_diff(t3, t2);
            EXPECT_GT(d32, 0.0);
            EXPECT_LE(d32, 0.5 + 1e-12);
            EXPECT_NEAR(circular_distance(CircleAngle(t1.turns() + t2.turns()), CircleAngle(2.0 * t3.turns())), 0.0,
                        1e-12);
            EXPECT_NEAR(circular_distance(f.t4().angle(), CircleAngle(t3.turns() + 0.25)), 0.0, 1e-12);
            EXPECT_LT(std::abs(f.u()), 1.0);
            EXPECT_NEAR(dot(p.vec(), f.axis()), f.u(), 1e-12);
            EXPECT_NEAR(dot(q.vec(), f.axis()), f.u(), 1e-12);
        }
        const ChordFrame c = chord_frame(p, q);
        EXPECT_GE(c.u(), 0.0);
        // canonical frame: T1 - T2 in (0, 1/2]
        EXPECT_LE(turns_diff(c.t1().angle(), c.t2().angle()), 0.5 + 1e-12);
    }
}

TEST(TangencyEllipse, ReferenceChordInEitherFrame)
{
    const TangencyEllipse r = tangency_ellipse(kP, kQ, chord_frame(kP, kQ).reversed());
    EXPECT_NEAR(r.a, 9.0 / 14.0, 1e-15);
    EXPECT_NEAR(r.b, std::sqrt(27.0 / 28.0), 1e-15);
    EXPECT_NEAR(r.c, -1.0 / 7.0, 1e-15);

    const TangencyEllipse e = tangency_ellipse(kP, kQ);
    EXPECT_NEAR(e.a, 9.0 / 14.0, 1e-15);
    EXPECT_NEAR(e.c, 1.0 / 7.0, 1e-15);
    EXPECT_NEAR(e.center().x, -1.0 / 7.0, 1e-15);
    EXPECT_NEAR(r.center().x, -1.0 / 7.0, 1e-15);

    EXPECT_NEAR(e.form({0.5, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(r.form({0.5, 0.0}), 0.0, 1e-15);
}

TEST(TangencyEllipse, SymmetricChord)
{
    for (double t : {0.1, 0.4, 0.8}) {
        const TangencyEllipse e = tangency_ellipse(DiskPoint(0.0, t), DiskPoint(0.0, -t));
        EXPECT_NEAR(e.a, (1 - t * t) / (1 + t * t), 1e-15);
        EXPECT_NEAR(e.b, 1.0, 1e-15);
        EXPECT_NEAR(e.c, 0.0, 1e-16);
    }
}

TEST(TangencyEllipse, ThreeCoefficientRoutesAgree)
{
    bbtest::Sampler s(24);
    for (int i = 0; i < 5000; ++i) {
        const DiskPoint p = s.disk_point();
        const DiskPoint q = s.disk_point();
        const TangencyEllipse e = tangency_ellipse(p, q);
        const double k = std::exp(hyperbolic::klein_distance(p, q));
        const EllipseAxes by_k = ellipse_axes_from_distance(k, e.frame.u());
        EXPECT_NEAR(e.a, by_k.a, 1e-10);
        EXPECT_NEAR(e.b, by_k.b, 1e-10);
        EXPECT_NEAR(e.c, by_k.c, 1e-10);

        const double a = arc_center_scalars(k, e.frame.u()).first;
        if (std::isfinite(a) && std::abs(a) < 1e6) {
            const EllipseAxes by_a = ellipse_axes_from_arc_center(a, e.frame.u());
            EXPECT_NEAR(e.a, by_a.a, 1e-9);
            EXPECT_NEAR(e.b, by_a.b, 1e-9);
            EXPECT_NEAR(e.c, by_a.c, 1e-9);
        }

        const Vec2 pf = e.frame.to_frame(p.vec());
        const Vec2 qf = e.frame.to_frame(q.vec());
        const EllipseAxes by_chord = ellipse_axes_from_chord(e.frame.u(), pf.y, qf.y);
        EXPECT_NEAR(e.a, by_chord.a, 1e-10);
    }
}

TEST(TangencyEllipse, TangentToTheCircleAtTheChordEnds)
{
    bbtest::Sampler s(25);
    for (int i = 0; i < 5000; ++i) {
        const DiskPoint p = s.disk_point();
        const DiskPoint q = s.disk_point();
        const TangencyEllipse e = tangency_ellipse(p, q);
        EXPECT_LE(std::abs(e.c) + e.a, 1.0 + 1e-10);
        EXPECT_GT(e.a, 0.0);
        EXPECT_GT(e.b, 0.0);
        EXPECT_LE(e.b, 1.0 + 1e-12);
        for (const Vec2 t : {e.frame.t1_cartesian(), e.frame.t2_cartesian()}) {
            EXPECT_NEAR(e.form(t), 0.0, 1e-10);
            const Vec2 g = e.gradient(t);
            const double angle = std::atan2(std::abs(cross(g, t)), dot(g, t));
            EXPECT_LT(angle, 1e-7);
        }
    }
}

TEST(TangencyEllipse, ShrinksTowardTheChordAsDistanceGrows)
{
    // k -> 1: the full disk (a -> 1); k -> infinity: the chord (a -> 0).
    for (double u : {-0.6, 0.0, 0.3, 0.9}) {
        double prev = 1.0 + 1e-12;
        for (double k = 1.0; k < 1e6; k *= 1.5) {
            const EllipseAxes ax = ellipse_axes_from_distance(k, u);
            EXPECT_LT(ax.a, prev) << u << " " << k;
            prev = ax.a;
        }
        EXPECT_NEAR(ellipse_axes_from_distance(1.0, u).a, 1.0, 1e-15);
        EXPECT_LT(ellipse_axes_from_distance(1e6, u).a, 1e-5);
    }
}

TEST(EnvelopeLine, ReferenceChordAtZero)
{
    const Line l = envelope_line(kP, kQ, 0.0);
    EXPECT_NEAR(l.b / l.a, 0.0, 1e-15);
    EXPECT_NEAR(-l.c / l.a, -11.0 / 14.0, 1e-15);
    EXPECT_NEAR(std::abs(l.c / l.a), 1.375 / 1.75, 1e-15);
}

TEST(EnvelopeLine, SymmetricChordTouchesTheLeftmostPoint)
{
    const double t = 0.35;
    const Line l = envelope_line(DiskPoint(0.0, t), DiskPoint(0.0, -t), 0.0);
    EXPECT_NEAR(l.b / l.a, 0.0, 1e-15);
    EXPECT_NEAR(-l.c / l.a, -(1 - t * t) / (1 + t * t), 1e-15);
}

TEST(EnvelopeLine, MatchesDirectConstruction)
{
    bbtest::Sampler s(26);
    for (int i = 0; i < 500; ++i) {
        const DiskPoint p = s.disk_point(0.95);
        const DiskPoint q = s.disk_point(0.95);
        const double theta = s.uniform(0.0, 2.0 * std::numbers::pi);
        const bbtest::LVec u1{std::cos(static_cast<bbtest::LD>(theta)), std::sin(static_cast<bbtest::LD>(theta))};
        const bbtest::LVec u2 = bbtest::second_hit_ref(u1, bbtest::lv(p.vec()));
        const bbtest::LVec u3 = bbtest::second_hit_ref(u1, bbtest::lv(q.vec()));
        const Line l = envelope_line(p, q, theta);
        const double scale = std::hypot(l.a, l.b);
        EXPECT_NEAR(l.eval({static_cast<double>(u2.x), static_cast<double>(u2.y)}) / scale, 0.0, 1e-10);
        EXPECT_NEAR(l.eval({static_cast<double>(u3.x), static_cast<double>(u3.y)}) / scale, 0.0, 1e-10);
    }
}

TEST(EnvelopeLine, AtAChordEndIsTheTangentAtTheOtherEnd)
{
    bbtest::Sampler s(27);
    for (int i = 0; i < 200; ++i) {
        const DiskPoint p = s.disk_point(0.9);
        const DiskPoint q = s.disk_point(0.9);
        const ChordFrame f = chord_frame(p, q);
        const Line l = envelope_line(p, q, f.t1().angle().radians());
        const Vec2 n = Vec2{l.a, l.b} / std::hypot(l.a, l.b);
        const Vec2 t2 = f.t2_cartesian();
        EXPECT_NEAR(l.eval(t2) / std::hypot(l.a, l.b), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(cross(n, t2)), 0.0, 1e-9);
    }
}

TEST(EnvelopeLine, EnvelopeIsTheEllipse)
{
    bbtest::Sampler s(28);
    for (int i = 0; i < 200; ++i) {
        const DiskPoint p = s.disk_point();
        const DiskPoint q = s.disk_point();
        const TangencyEllipse e = tangency_ellipse(p, q);
        for (int j = 0; j < 360; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / 360.0;
            const std::optional<Vec2> x = envelope_point(p, q, theta);
            if (!x) continue;
            EXPECT_NEAR(e.form(*x), 0.0, 1e-8);
        }
    }
}

TEST(PoincareArcs, DiameterChordWithKEqualThree)
{
    // Poincare points (0, +-t) with d = log 3: t = tanh(log(3) / 4)
    const double t = std::tanh(std::log(3.0) / 4.0);
    const auto [c1, c2] = poincare_arcs(DiskPoint(0.0, t), DiskPoint(0.0, -t));
    EXPECT_NEAR(c1.center.norm(), 4.0 / 3.0, 1e-12);
    EXPECT_NEAR(c1.radius, 5.0 / 3.0, 1e-12);
    EXPECT_NEAR(c2.center.norm(), 4.0 / 3.0, 1e-12);
    EXPECT_NEAR(c2.radius, 5.0 / 3.0, 1e-12);
    const auto [a1, a2] = arc_center_scalars(3.0, 0.0);
    EXPECT_NEAR(a1, -4.0 / 3.0, 1e-15);
    EXPECT_NEAR(a2, 4.0 / 3.0, 1e-15);
}

TEST(PoincareArcs, PassThroughTheChordEnds)
{
    bbtest::Sampler s(29);
    for (int i = 0; i < 1000; ++i) {
        const DiskPoint p = s.disk_point(0.95);
        const DiskPoint q = s.disk_point(0.95);
        const auto [c1, c2] = poincare_arcs(p, q);
        const ChordFrame f = chord_frame(hyperbolic::to_klein(p), hyperbolic::to_klein(q));
        for (const ArcCircle& c : {c1, c2}) {
            if (!std::isfinite(c.radius) || c.radius > 1e6) continue;
            EXPECT_NEAR(c.signed_distance(f.t1_cartesian()) / std::max(1.0, c.radius), 0.0, 1e-10);
            EXPECT_NEAR(c.signed_distance(f.t2_cartesian()) / std::max(1.0, c.radius), 0.0, 1e-10);
        }
    }
}

TEST(PoincareArcs, ImageOfTheEllipse)
{
    bbtest::Sampler s(30);
    for (int i = 0; i < 100; ++i) {
        const DiskPoint p = s.disk_point(0.95);
        const DiskPoint q = s.disk_point(0.95);
        const TangencyEllipse e = tangency_ellipse(p, q);
        const auto [c1, c2] = poincare_arcs(hyperbolic::from_klein(p), hyperbolic::from_klein(q));
        for (int j = 0; j < 100; ++j) {
            const Vec2 x = e.point_at(2.0 * std::numbers::pi * (j + 0.5) / 100.0);
            if (x.norm2() >= 1.0 - 1e-9) continue;
            const Vec2 y = hyperbolic::detail::from_klein(x);
            const double d = std::min(std::abs(c1.signed_distance(y)), std::abs(c2.signed_distance(y)));
            EXPECT_LT(d, 1e-8);
        }
    }
}

TEST(PoincareArcs, ShortChordsHugTheBoundary)
{
    for (double u : {0.0, 0.5}) {
        double prev = 1e300;
        for (double k = 3.0; k > 1.0 + 1e-9; k = 1.0 + (k - 1.0) / 4.0) {
            const double a = std::abs(arc_center_scalars(k, u).first);
            EXPECT_LT(a, prev);
            prev = a;
        }
        EXPECT_LT(prev, 1e-8);
        const double a = arc_center_scalars(1.0 + 1e-12, u).first;
        EXPECT_NEAR(std::sqrt(a * a - 2.0 * a * u + 1.0), 1.0, 1e-8);
    }
}

TEST(PoincareArcs, AngleWithTheCircle)
{
    // Angle between C1 and the unit circle at T1, measured between the two
    // normals, against 2 arctan(k) - pi/2.
    for (double u : {0.0, 0.2, 0.6}) {
        for (double k : {1.5, 3.0, 10.0}) {
            const auto [a1, a2] = arc_center_scalars(k, u);
            for (double a : {a1, a2}) {
                const double r = std::sqrt(a * a - 2.0 * a * u + 1.0);
                const double between_normals = std::acos(std::abs((1.0 - a * u) / r));
                EXPECT_NEAR(between_normals, 2.0 * std::atan(k) - std::numbers::pi / 2.0, 1e-12);
            }
        }
    }
}

TEST(ConstructInscribed, ReferenceTriangles)
{
    const InscribedTriangles one = construct_inscribed_triangles(bbtest::example_triangle());
    ASSERT_EQ(one.triangles.size(), 1u);
    EXPECT_EQ(one.count.m, Multiplicity::One);
    const double expect[3] = {1.0 / 6.0, 0.5, 5.0 / 6.0};
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(circular_distance(one.triangles[0][static_cast<std::size_t>(i)].angle(), CircleAngle(expect[i])), 0.0,
                    1e-12);
    }
    EXPECT_EQ(construct_inscribed_triangles(bbtest::centered_equilateral(0.75)).triangles.size(), 2u);
    EXPECT_TRUE(construct_inscribed_triangles(bbtest::centered_equilateral(0.1)).triangles.empty());
}

TEST(ConstructInscribed, SidesTouchTheObstacle)
{
    bbtest::Sampler s(31);
    for (int i = 0; i < 300; ++i) {
        const Triangle t = s.triangle();
        const InscribedTriangles r = construct_inscribed_triangles(t);
        if (std::abs(r.count.margin) > 1e-6) {
            EXPECT_EQ(static_cast<int>(r.triangles.size()), r.count.count());
        }
        for (const auto& tri : r.triangles) {
            for (int k = 0; k < 3; ++k) {
                const Vec2 a = tri[static_cast<std::size_t>(k)].cartesian();
                const Vec2 b = tri[static_cast<std::size_t>((k + 1) % 3)].cartesian();
                const Vec2 c = tri[static_cast<std::size_t>((k + 2) % 3)].cartesian();
                const auto [dist, inside] = side_contact(a, b, c, t);
                EXPECT_LE(dist, 1e-9);
                EXPECT_TRUE(inside);
            }
        }
    }
}
