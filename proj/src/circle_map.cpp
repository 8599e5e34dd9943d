#include "barbilliards/circle_map.hpp"

#include "barbilliards/inscribed_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace barbilliards::circle_map {

namespace {

struct Tangent {
    Vec2 v;       // start on the circle
    Vec2 w;       // second intersection
    int support;  // vertex the tangent line passes through
    int other;    // opposite extreme of the vertex cone
};

Tangent tangent_from(const Triangle& t, CircleAngle angle)
{
    const Vec2 v = angle.unit_vector();
    std::array<Vec2, 3> d;
    for (int j = 0; j < 3; ++j) {
        d[static_cast<std::size_t>(j)] = t.vertex(j).vec() - v;
    }
    // All three directions lie in an open half-plane (v is outside the
    // triangle), so cross products order them consistently.
    int cw = 0;
    int ccw = 0;
    for (int j = 1; j < 3; ++j) {
        const Vec2 dj = d[static_cast<std::size_t>(j)];
        const double c_cw = cross(d[static_cast<std::size_t>(cw)], dj);
        if (c_cw < 0.0 || (c_cw == 0.0 && dj.norm2() > d[static_cast<std::size_t>(cw)].norm2())) {
            cw = j;
        }
        const double c_ccw = cross(d[static_cast<std::size_t>(ccw)], dj);
        if (c_ccw > 0.0 || (c_ccw == 0.0 && dj.norm2() > d[static_cast<std::size_t>(ccw)].norm2())) {
            ccw = j;
        }
    }
    const Vec2 dir = d[static_cast<std::size_t>(cw)];
    const Vec2 w = v - dir * (2.0 * dot(v, dir) / dir.norm2());
    return {v, w, cw, ccw};
}

Lift lift_step(const Triangle& t, Lift x)
{
    const double y = CircleAngle::from_vector(tangent_from(t, CircleAngle(x.frac)).w).turns();
    return {x.winding + (y <= x.frac ? 1 : 0), y};
}

double derivative_at(const Triangle& t, CircleAngle a)
{
    const Tangent tg = tangent_from(t, a);
    const Vec2 x = t.vertex(tg.support).vec();
    return (tg.w - x).norm() / (tg.v - x).norm();
}

double wrap(double x)
{
    const double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

// g and g' at x in [0, 1).
double gap(const Triangle& t, double x)
{
    Lift l{0, x};
    for (int i = 0; i < 3; ++i) l = lift_step(t, l);
    return static_cast<double>(l.winding - 1) + (l.frac - x);
}

double gap_slope(const Triangle& t, double x)
{
    double prod = 1.0;
    CircleAngle a(x);
    for (int i = 0; i < 3; ++i) {
        prod *= derivative_at(t, a);
        a = psi(t, a);
    }
    return prod - 1.0;
}

struct Root {
    double x;
    double g;
    double slope;
    bool tangential;
};

// Bisection on a sign change of f over [lo, hi] (f(lo) < 0 != f(hi) < 0).
template <class F>
double bisect_sign(F f, double lo, double hi)
{
    const bool lo_neg = f(lo) < 0.0;
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((f(mid) < 0.0) == lo_neg) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

// Local extremum of g in [lo, hi] where g' changes sign.
double refine_extremum(const Triangle& t, double lo, double hi)
{
    const bool lo_neg = gap_slope(t, lo) < 0.0;
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((gap_slope(t, mid) < 0.0) == lo_neg) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double glo = gap(t, wrap(lo));
    const double ghi = gap(t, wrap(hi));
    return lo_neg ? (glo <= ghi ? lo : hi) : (glo >= ghi ? lo : hi);
}

struct Scan {
    std::vector<double> x;
    std::vector<double> g;
    std::vector<double> slope;
};

Scan scan(const Triangle& t)
{
    Scan s;
    for (int i = 0; i <= kScanSamples; ++i) {
        const double x = i == kScanSamples ? 1.0 : static_cast<double>(i) / kScanSamples;
        s.x.push_back(x);
        // g and g' are 1-periodic
        s.g.push_back(i == kScanSamples ? s.g.front() : gap(t, x));
        s.slope.push_back(i == kScanSamples ? s.slope.front() : gap_slope(t, x));
    }
    return s;
}

Root make_root(const Triangle& t, double x, bool tangential)
{
    x = wrap(x);
    return {x, gap(t, x), gap_slope(t, x), tangential};
}

std::array<CircleAngle, 3> orbit_points(const Triangle& t, double x)
{
    std::array<CircleAngle, 3> pts{CircleAngle(x), CircleAngle(0.0), CircleAngle(0.0)};
    pts[1] = psi(t, pts[0]);
    pts[2] = psi(t, pts[1]);
    std::sort(pts.begin(), pts.end(),
              [](CircleAngle a, CircleAngle b) { return a.turns() < b.turns(); });
    return pts;
}

Period3Orbit make_orbit(const Triangle& t, const Root& r)
{
    Period3Orbit o;
    o.points = orbit_points(t, r.x);
    o.slope = r.slope;
    o.tangential = r.tangential;
    for (const auto& p : o.points) {
        o.residual = std::max(o.residual, std::abs(gap(t, p.turns())));
    }
    if (r.tangential) {
        o.stability = Stability::SemiStable;
    } else {
        o.stability = r.slope < 0.0 ? Stability::Attracting : Stability::Repelling;
    }
    return o;
}

struct Extremum {
    double x;
    double g;
    double lo;
    double hi;
};

// Extrema of g located between scan samples where g' changes sign.
std::vector<Extremum> extrema(const Triangle& t, const Scan& s)
{
    std::vector<Extremum> out;
    for (int i = 0; i < kScanSamples; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const bool down_up = s.slope[k] < 0.0 && s.slope[k + 1] >= 0.0;
        const bool up_down = s.slope[k] > 0.0 && s.slope[k + 1] <= 0.0;
        if (!down_up && !up_down) continue;
        const double x = refine_extremum(t, s.x[k], s.x[k + 1]);
        out.push_back({x, gap(t, wrap(x)), s.x[k], s.x[k + 1]});
    }
    return out;
}

// Extremum of f on [lo, hi] by golden section: the minimum when `lowest`,
// else the maximum.
template <class F>
double extremum_of(F f, double lo, double hi, bool lowest)
{
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    const auto h = [&](double x) { return lowest ? f(x) : -f(x); };
    double x1 = hi - r * (hi - lo);
    double x2 = lo + r * (hi - lo);
    double f1 = h(x1);
    double f2 = h(x2);
    while (x1 < x2 && lo < x1 && x2 < hi) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = h(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

// Brackets a sign change of f around x by doubling, then bisects. Returns x
// unchanged if no bracket is found within kMergeDistance.
template <class F>
double polish_root(F f, double x)
{
    const bool neg = f(x) < 0.0;
    for (double h = 1e-16; h < kMergeDistance; h *= 2.0) {
        if ((f(x - h) < 0.0) != neg) return bisect_sign(f, x - h, x);
        if ((f(x + h) < 0.0) != neg) return bisect_sign(f, x, x + h);
    }
    return x;
}

}  // namespace

Lift Lift::from_value(double x)
{
    const double w = std::floor(x);
    double f = x - w;
    auto k = static_cast<std::int64_t>(w);
    if (f >= 1.0) {
        f = 0.0;
        ++k;
    }
    return {k, f};
}

std::pair<int, int> supporting_vertices(const Triangle& t, CircleAngle v)
{
    const Tangent tg = tangent_from(t, v);
    return {tg.support, tg.other};
}

CircleAngle psi(const Triangle& t, CircleAngle v)
{
    return CircleAngle::from_vector(tangent_from(t, v).w);
}

double psi_derivative(const Triangle& t, CircleAngle v)
{
    return derivative_at(t, v);
}

Lift psi_lift(const Triangle& t, Lift x)
{
    return lift_step(t, x);
}

CircleAngle psi3(const Triangle& t, CircleAngle v)
{
    return psi(t, psi(t, psi(t, v)));
}

std::vector<CircleAngle> iterate_orbit(const Triangle& t, CircleAngle v0, int n)
{
    if (n < 0) {
        throw std::invalid_argument("orbit length must be nonnegative");
    }
    std::vector<CircleAngle> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(v0);
    for (int i = 0; i < n; ++i) out.push_back(psi(t, out.back()));
    return out;
}

RotationEstimate rotation_number(const Triangle& t, int n)
{
    if (n < 1) {
        throw std::invalid_argument("rotation number needs at least one iteration");
    }
    Lift x;
    for (int i = 0; i < n; ++i) x = lift_step(t, x);
    double value = (static_cast<double>(x.winding) + x.frac) / n;
    value -= std::floor(value);
    RotationEstimate est;
    est.value = value;
    est.error_bound = 1.0 / n;
    est.exact_one_third = inscribed::count_inscribed(t).m != inscribed::Multiplicity::Zero;
    est.iterations = n;
    return est;
}

double period3_gap(const Triangle& t, double x)
{
    const Lift l = Lift::from_value(x);
    Lift y = l;
    for (int i = 0; i < 3; ++i) y = lift_step(t, y);
    return static_cast<double>(y.winding - l.winding - 1) + (y.frac - l.frac);
}

double period3_gap_derivative(const Triangle& t, double x)
{
    return gap_slope(t, Lift::from_value(x).frac);
}

std::vector<Period3Orbit> find_period3_orbits(const Triangle& t)
{
    const Scan s = scan(t);
    const auto g = [&](double x) { return gap(t, wrap(x)); };

    // psi^3 is increasing, so g' > -1 and an interval [a, b] with
    // g(a) > b - a or g(b) < a - b holds no root. Intervals this does not
    // rule out are split down to kMinWidth.
    std::vector<Root> roots;
    std::vector<std::pair<double, double>> flat;
    const auto explore = [&](auto&& self, double a, double ga, double b, double gb) -> void {
        const double h = b - a;
        if (ga > h + kRootResidual || gb < -h - kRootResidual) return;
        if (h <= kMinWidth) {
            if ((ga < 0.0) != (gb < 0.0)) {
                roots.push_back(make_root(t, bisect_sign(g, a, b), false));
            } else {
                flat.emplace_back(a, b);
            }
            return;
        }
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        self(self, a, ga, mid, gm);
        self(self, mid, gm, b, gb);
    };
    for (int i = 0; i < kScanSamples; ++i) {
        const auto k = static_cast<std::size_t>(i);
        explore(explore, s.x[k], s.g[k], s.x[k + 1], s.g[k + 1]);
    }

    // Runs of unresolved leaves can surround a near-double root: the extremum of
    // g there is a double root when it is within kRootResidual of zero, a
    // pair of simple roots when it crosses.
    for (std::size_t i = 0; i < flat.size();) {
        std::size_t j = i;
        while (j + 1 < flat.size() && flat[j + 1].first <= flat[j].second) ++j;
        const double lo = flat[i].first;
        const double hi = flat[j].second;
        i = j + 1;
        // Leaves beside a steep simple root are unresolved too; only a sign
        // change of g' makes an extremum.
        if ((gap_slope(t, wrap(lo)) < 0.0) == (gap_slope(t, wrap(hi)) < 0.0)) continue;
        const bool above = g(lo) >= 0.0;
        const double x = extremum_of(g, lo, hi, above);
        const double gx = g(x);
        if (std::abs(gx) <= kRootResidual) {
            roots.push_back(make_root(t, x, true));
        } else if (above == (gx < 0.0)) {
            roots.push_back(make_root(t, bisect_sign(g, lo, x), false));
            roots.push_back(make_root(t, bisect_sign(g, x, hi), false));
        }
    }

    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.x < b.x; });
    // Flat crossings closer than kMergeDistance are one double root whose
    // |g| is at rounding level; noise e splits it by about sqrt(e / g'').
    const auto same_double_root = [](const Root& a, const Root& b, double dist) {
        return dist < kMergeDistance && std::abs(a.slope) < kFlatSlope && std::abs(b.slope) < kFlatSlope;
    };
    const auto combine = [&](const Root& a, const Root& b, double bx) {
        if (a.tangential && (!b.tangential || std::abs(a.g) <= std::abs(b.g))) return a;
        if (b.tangential) return b;
        // g' carries no cancellation, so its zero pins the double root far
        // better than the crossings of g do.
        const double lo = a.x - kMergeDistance;
        const double hi = bx + kMergeDistance;
        const bool brackets = (gap_slope(t, wrap(lo)) < 0.0) != (gap_slope(t, wrap(hi)) < 0.0);
        return make_root(t, brackets ? refine_extremum(t, lo, hi) : 0.5 * (a.x + bx), true);
    };
    std::vector<Root> merged;
    for (const Root& r : roots) {
        if (!merged.empty() && same_double_root(merged.back(), r, r.x - merged.back().x)) {
            merged.back() = combine(merged.back(), r, r.x);
            continue;
        }
        merged.push_back(r);
    }
    if (merged.size() >= 2 && same_double_root(merged.back(), merged.front(), merged.front().x + 1.0 - merged.back().x)) {
        merged.front() = combine(merged.back(), merged.front(), merged.front().x + 1.0);
        merged.pop_back();
    }

    std::vector<Period3Orbit> orbits;
    std::vector<bool> used(merged.size(), false);
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const Root& r = merged[i];
        Period3Orbit o;
        o.slope = r.slope;
        o.tangential = r.tangential;
        o.points[0] = CircleAngle(r.x);
        // The other two points: the matching separately refined roots, or a
        // local re-bracketing of the psi image when the search missed them.
        for (std::size_t k = 1; k < 3; ++k) {
            const CircleAngle y = psi(t, o.points[k - 1]);
            std::size_t best = merged.size();
            double best_d = kMergeDistance;
            for (std::size_t j = 0; j < merged.size(); ++j) {
                if (used[j] || merged[j].tangential != r.tangential) continue;
                if (!r.tangential && (merged[j].slope < 0.0) != (r.slope < 0.0)) continue;
                const double d = circular_distance(y, CircleAngle(merged[j].x));
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            if (best < merged.size()) {
                used[best] = true;
                o.points[k] = CircleAngle(merged[best].x);
            } else {
                o.points[k] = CircleAngle(polish_root(g, y.turns()));
            }
        }
        std::sort(o.points.begin(), o.points.end(),
                  [](CircleAngle a, CircleAngle b) { return a.turns() < b.turns(); });
        for (const auto& p : o.points) o.residual = std::max(o.residual, std::abs(gap(t, p.turns())));
        if (o.tangential) {
            o.stability = Stability::SemiStable;
        } else {
            o.stability = o.slope < 0.0 ? Stability::Attracting : Stability::Repelling;
        }
        orbits.push_back(o);
    }
    return orbits;
}

Period3Orbit tangential_orbit(const Triangle& t)
{
    const Scan s = scan(t);
    double best_x = 0.0;
    double best_g = s.g.front();
    for (std::size_t k = 0; k < s.g.size(); ++k) {
        if (std::abs(s.g[k]) < std::abs(best_g)) {
            best_g = s.g[k];
            best_x = s.x[k];
        }
    }
    for (const Extremum& e : extrema(t, s)) {
        if (std::abs(e.g) < std::abs(best_g)) {
            best_g = e.g;
            best_x = e.x;
        }
    }
    return make_orbit(t, make_root(t, best_x, true));
}

DynamicsReport classify_dynamics(const Triangle& t)
{
    DynamicsReport rep;
    const std::vector<Period3Orbit> orbits = find_period3_orbits(t);
    if (orbits.empty()) {
        rep.kind = DynamicsCase::HighRotation;
        return rep;
    }
    if (orbits.size() == 1) {
        rep.kind = DynamicsCase::BoundaryCase;
        const auto& s = orbits.front().points;
        rep.attractor = s;
        // Off the orbit g has one sign: psi^3 pushes points forward when
        // g > 0, so each point attracts the arc behind it.
        const double mid = s[0].turns() + 0.5 * ccw_arc(s[0], s[1]);
        const bool forward = period3_gap(t, mid) > 0.0;
        for (int j = 0; j < 3; ++j) {
            const CircleAngle cur = s[static_cast<std::size_t>(j)];
            if (forward) {
                rep.basins.push_back({s[static_cast<std::size_t>((j + 2) % 3)], cur, cur, false, true});
            } else {
                rep.basins.push_back({cur, s[static_cast<std::size_t>((j + 1) % 3)], cur, true, false});
            }
        }
        return rep;
    }

    rep.kind = DynamicsCase::InteriorCase;
    const Period3Orbit* att = &orbits[0];
    const Period3Orbit* rep_orbit = &orbits[1];
    if (att->slope > rep_orbit->slope) std::swap(att, rep_orbit);
    rep.attractor = att->points;
    rep.repeller = rep_orbit->points;
    // Each attractor point sits between two consecutive repeller points.
    for (const CircleAngle a : att->points) {
        std::size_t prev = 0;
        double best = 2.0;
        for (std::size_t j = 0; j < 3; ++j) {
            const double back = ccw_arc(rep_orbit->points[j], a);
            if (back < best) {
                best = back;
                prev = j;
            }
        }
        rep.basins.push_back({rep_orbit->points[prev], rep_orbit->points[(prev + 1) % 3], a, false, false});
    }
    return rep;
}

}  // namespace barbilliards::circle_map
