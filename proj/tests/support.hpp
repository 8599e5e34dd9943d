#pragma once

// Shared fixtures and independent reference computations for the tests.
// The reference routines below use long double and straightforward
// formulas; none of them call into the library.

#include "barbilliards/geometry.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>

namespace bbtest {

using barbilliards::DiskPoint;
using barbilliards::Triangle;
using barbilliards::Vec2;

using LD = long double;

inline const double kSqrt3 = std::numbers::sqrt3;

// Example triangle: equilateral, circumradius 1/2, one vertex at (1/2, 0).
inline Triangle example_triangle()
{
    return Triangle(DiskPoint(-0.25, kSqrt3 / 4.0), DiskPoint(-0.25, -kSqrt3 / 4.0), DiskPoint(0.5, 0.0));
}

// Equilateral, vertices at r e^{i(0, 120, 240 deg)}, listed P = 120 deg,
// Q = 240 deg, R = 0 deg.
inline Triangle centered_equilateral(double r)
{
    const double h = r * kSqrt3 / 2.0;
    return Triangle(DiskPoint(-0.5 * r, h), DiskPoint(-0.5 * r, -h), DiskPoint(r, 0.0));
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    // Uniform by area in the disk of the given radius, inside the guard.
    Vec2 disk_vec(double radius = 1.0)
    {
        for (;;) {
            const Vec2 v{uniform(-radius, radius), uniform(-radius, radius)};
            if (v.norm2() < radius * radius && v.norm2() < 1.0 - 1e-9) return v;
        }
    }

    DiskPoint disk_point(double radius = 1.0) { return DiskPoint(disk_vec(radius)); }

    Triangle triangle(double radius = 1.0)
    {
        for (;;) {
            const Vec2 a = disk_vec(radius);
            const Vec2 b = disk_vec(radius);
            const Vec2 c = disk_vec(radius);
            if (std::abs(barbilliards::twice_signed_area(a, b, c)) > 1e-6) {
                return Triangle(DiskPoint(a), DiskPoint(b), DiskPoint(c));
            }
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

struct LVec {
    LD x;
    LD y;
};

inline LVec lv(Vec2 v)
{
    return {static_cast<LD>(v.x), static_cast<LD>(v.y)};
}

inline LD ldot(LVec a, LVec b)
{
    return a.x * b.x + a.y * b.y;
}

inline LD ldist(LVec a, LVec b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Endpoints of the line a + t (b - a) on the unit circle, t- < 0 < t+.
inline std::pair<LVec, LVec> chord_ends(LVec a, LVec b)
{
    const LVec d{b.x - a.x, b.y - a.y};
    const LD A = ldot(d, d);
    const LD B = ldot(a, d);
    const LD C = ldot(a, a) - 1.0L;
    const LD s = std::sqrt(B * B - A * C);
    const LD tm = (-B - s) / A;
    const LD tp = (-B + s) / A;
    return {{a.x + tm * d.x, a.y + tm * d.y}, {a.x + tp * d.x, a.y + tp * d.y}};
}

// Klein distance from the cross-ratio with explicit chord endpoints.
inline LD klein_distance_ref(LVec p, LVec q)
{
    if (p.x == q.x && p.y == q.y) return 0.0L;
    const auto [v1, v2] = chord_ends(p, q);  // v1 beyond p, v2 beyond q
    return 0.5L * std::log((ldist(v1, q) * ldist(v2, p)) / (ldist(v1, p) * ldist(v2, q)));
}

// Poincare distance by the hyperboloid model.
inline LD poincare_distance_ref(LVec p, LVec q)
{
    auto lift = [](LVec z) {
        const LD s = 1.0L - ldot(z, z);
        return std::array<LD, 3>{(1.0L + ldot(z, z)) / s, 2.0L * z.x / s, 2.0L * z.y / s};
    };
    const auto a = lift(p);
    const auto b = lift(q);
    const LD c = a[0] * b[0] - a[1] * b[1] - a[2] * b[2];
    return std::acosh(std::max(c, 1.0L));
}

inline LVec from_klein_ref(LVec p)
{
    const LD s = 1.0L + std::sqrt(1.0L - ldot(p, p));
    return {p.x / s, p.y / s};
}

// min over the Klein line PQ of d'(R, X), by a 10^4-point scan then
// golden-section refinement.
inline LD foot_distance_ref(LVec p, LVec q, LVec r)
{
    const auto [v1, v2] = chord_ends(p, q);
    auto at = [&](LD s) {
        return LVec{v1.x + s * (v2.x - v1.x), v1.y + s * (v2.y - v1.y)};
    };
    auto f = [&](LD s) { return klein_distance_ref(r, at(s)); };
    constexpr int n = 10000;
    int best = 1;
    LD best_v = f(1.0L / n);
    for (int i = 2; i < n; ++i) {
        const LD v = f(static_cast<LD>(i) / n);
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    LD lo = static_cast<LD>(best - 1) / n;
    LD hi = static_cast<LD>(best + 1) / n;
    const LD g = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    LD x1 = hi - g * (hi - lo);
    LD x2 = lo + g * (hi - lo);
    LD f1 = f(x1);
    LD f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-18L; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

// Second intersection with the unit circle of the line from v through x.
inline LVec second_hit_ref(LVec v, LVec x)
{
    const LVec d{x.x - v.x, x.y - v.y};
    const LD t = -2.0L * ldot(v, d) / ldot(d, d);
    return {v.x + t * d.x, v.y + t * d.y};
}

inline LD turns_of(LVec v)
{
    LD a = std::atan2(v.y, v.x) / (2.0L * std::numbers::pi_v<LD>);
    if (a < 0) a += 1.0L;
    return a >= 1.0L ? 0.0L : a;
}

// psi by brute force: among the lines from v through each vertex keep the
// supporting ones (all vertices on one side) and take the one whose second
// intersection is reached first counterclockwise.
inline double psi_ref(const Triangle& t, double v_turns)
{
    const LD a = static_cast<LD>(v_turns) * 2.0L * std::numbers::pi_v<LD>;
    const LVec v{std::cos(a), std::sin(a)};
    LD best = 2.0L;
    LD best_turns = 0.0L;
    for (int j = 0; j < 3; ++j) {
        const LVec x = lv(t.vertex(j).vec());
        const LVec d{x.x - v.x, x.y - v.y};
        bool support = true;
        int sign = 0;
        for (int k = 0; k < 3; ++k) {
            const LVec y = lv(t.vertex(k).vec());
            const LD c = d.x * (y.y - v.y) - d.y * (y.x - v.x);
            if (std::abs(c) < 1e-18L) continue;
            const int s = c > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            if (s != sign) support = false;
        }
        if (!support) continue;
        const LD w = turns_of(second_hit_ref(v, x));
        LD arc = w - static_cast<LD>(v_turns);
        if (arc < 0) arc += 1.0L;
        if (arc < best) {
            best = arc;
            best_turns = w;
        }
    }
    return static_cast<double>(best_turns);
}

// Count of inscribed triangles from the discriminant of
// (u^2 + v^2) t^2 - (k^2 + 1) u t + k^2 = 0, after moving the Poincare
// images of P, Q to i and ik in the upper half-plane. Returns the
// discriminant; its sign is the classification.
inline LD half_plane_discriminant(const Triangle& t)
{
    using C = std::complex<LD>;
    auto poincare = [](Vec2 k) {
        const LVec z = from_klein_ref(lv(k));
        return C(z.x, z.y);
    };
    const C p = poincare(t.p().vec());
    const C q = poincare(t.q().vec());
    const C r = poincare(t.r().vec());
    // disk automorphism sending p to 0
    auto to_origin = [&](C z) { return (z - p) / (1.0L - std::conj(p) * z); };
    const C q0 = to_origin(q);
    const C rot = std::conj(q0) / std::abs(q0);  // q onto the positive axis
    const LD xq = std::abs(q0);
    const C r0 = to_origin(r) * rot;
    const C f = C(0.0L, 1.0L) * (r0 + 1.0L) / (1.0L - r0);
    const LD k = (1.0L + xq) / (1.0L - xq);
    const LD u = std::abs(f.real());
    const LD v = f.imag();
    return (k * k + 1.0L) * (k * k + 1.0L) * u * u - 4.0L * k * k * (u * u + v * v);
}

}  // namespace bbtest
