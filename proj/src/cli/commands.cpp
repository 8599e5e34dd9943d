#include "barbilliards/circle_map.hpp"
#include "barbilliards/cli_io.hpp"
#include "barbilliards/congruence_search.hpp"
#include "barbilliards/hyperbolic_models.hpp"
#include "barbilliards/inscribed_classifier.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <thread>

namespace barbilliards::cli {

namespace {

using nlohmann::json;
namespace hyp = barbilliards::hyperbolic;
namespace cm = barbilliards::circle_map;
namespace ins = barbilliards::inscribed;
namespace cg = barbilliards::congruence;

struct Options {
    std::string triangle;
    std::string chord;
    std::string shape = "equilateral";
    std::string svg;
    std::string csv;
    double band = ins::kDefaultBand;
    double start = 0.0;
    double tol = 1e-4;
    std::optional<int> iters;
    int steps = 100;
    int grid = 101;
    int samples = 1000;
    bool json = false;
};

std::string fixed7(double v)
{
    char buf[40];
    // no "-0.0000000" for values that round to zero
    std::snprintf(buf, sizeof buf, "%.7f", std::abs(v) < 5e-8 ? 0.0 : v);
    return buf;
}

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string point7(Vec2 v)
{
    return "(" + fixed7(v.x) + ", " + fixed7(v.y) + ")";
}

json point_json(Vec2 v)
{
    return json::array({v.x, v.y});
}

json triangle_json(const Triangle& t)
{
    return {{"P", point_json(t.p().vec())}, {"Q", point_json(t.q().vec())}, {"R", point_json(t.r().vec())}};
}

void draw_base(SvgDocument& svg, const Triangle* t)
{
    svg.circle({0.0, 0.0}, 1.0, "black");
    if (t != nullptr) {
        svg.polygon({t->p().vec(), t->q().vec(), t->r().vec()}, "black", "#d0d0d0");
    }
}

// Second intersection of the line from v (on the circle) through x.
Vec2 second_hit(Vec2 v, Vec2 x)
{
    const Vec2 d = x - v;
    return v - d * (2.0 * dot(v, d) / d.norm2());
}

int cmd_classify(const Options& o, std::ostream& out)
{
    const Triangle t = parse_triangle(o.triangle);
    const ins::InscribedCount count = ins::count_inscribed(t, o.band);
    struct Side {
        const char* name;
        double delta;
        double gap;
    };
    const Side sides[3] = {
        {"PQ", hyp::delta(t.p(), t.q(), t.r()), hyp::klein_tangent_gap(t.p(), t.q())},
        {"QR", hyp::delta(t.q(), t.r(), t.p()), hyp::klein_tangent_gap(t.q(), t.r())},
        {"RP", hyp::delta(t.r(), t.p(), t.q()), hyp::klein_tangent_gap(t.r(), t.p())},
    };
    const double omega = hyp::omega(t);
    const ins::TangencyEllipse e = ins::tangency_ellipse(t.p(), t.q());

    if (o.json) {
        json j;
        j["triangle"] = triangle_json(t);
        j["band"] = o.band;
        j["m"] = count.count();
        j["margin"] = count.margin;
        j["omega"] = omega;
        json s = json::array();
        for (const Side& side : sides) {
            s.push_back({{"side", side.name}, {"delta", side.delta}, {"gap", side.gap}});
        }
        j["sides"] = s;
        j["ellipse"] = {{"a", e.a},
                        {"b", e.b},
                        {"c", e.c},
                        {"u", e.frame.u()},
                        {"t3", e.frame.t3().angle().turns()}};
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "P = " << point7(t.p().vec()) << "  Q = " << point7(t.q().vec()) << "  R = " << point7(t.r().vec())
        << '\n';
    out << "side  delta       gap         delta-gap\n";
    for (const Side& side : sides) {
        out << side.name << "    " << fixed7(side.delta) << "   " << fixed7(side.gap) << "   "
            << fixed7(side.delta - side.gap) << '\n';
    }
    out << "omega = " << fixed7(omega) << '\n';
    out << "m = " << count.count() << "  (margin " << fixed7(count.margin) << ", band " << o.band << ")\n";
    out << "ellipse of PQ: u = " << fixed7(e.frame.u()) << ", T3 = " << fixed7(e.frame.t3().angle().turns())
        << " turns, a = " << fixed7(e.a) << ", b = " << fixed7(e.b) << ", c = " << fixed7(e.c) << '\n';
    return kExitOk;
}

int cmd_rotation(const Options& o, std::ostream& out)
{
    const Triangle t = parse_triangle(o.triangle);
    const int n = o.iters.value_or(100000);
    const cm::RotationEstimate r = cm::rotation_number(t, n);
    if (o.json) {
        json j;
        j["triangle"] = triangle_json(t);
        j["value"] = r.value;
        j["error_bound"] = r.error_bound;
        j["exact_one_third"] = r.exact_one_third;
        j["iterations"] = r.iterations;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "rho = " << fixed7(r.value) << " +- " << r.error_bound << "  (" << r.iterations
        << " iterations)\n";
    out << "exactly 1/3: " << (r.exact_one_third ? "yes" : "no") << '\n';
    return kExitOk;
}

int cmd_orbit(const Options& o, std::ostream& out)
{
    const Triangle t = parse_triangle(o.triangle);
    if (o.steps < 0) throw std::invalid_argument("--steps must be nonnegative");
    const std::vector<CircleAngle> orbit = cm::iterate_orbit(t, CircleAngle(o.start), o.steps);
    if (!o.svg.empty()) {
        SvgDocument svg;
        draw_base(svg, &t);
        std::vector<Vec2> pts;
        for (const CircleAngle a : orbit) pts.push_back(a.unit_vector());
        svg.polyline(pts, "#1f5fbf");
        for (const Vec2 p : pts) svg.dot(p, "#1f5fbf");
        write_file(o.svg, svg.str());
    }
    if (o.json) {
        json j;
        j["triangle"] = triangle_json(t);
        json a = json::array();
        for (const CircleAngle v : orbit) a.push_back(v.turns());
        j["orbit"] = a;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "k      turns       x           y\n";
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        const Vec2 p = orbit[k].unit_vector();
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-6zu %s   %s   %s\n", k, fixed7(orbit[k].turns()).c_str(),
                      fixed7(p.x).c_str(), fixed7(p.y).c_str());
        out << buf;
    }
    return kExitOk;
}

int cmd_ellipse(const Options& o, std::ostream& out)
{
    const auto [p, q] = parse_chord(o.chord);
    const ins::TangencyEllipse e = ins::tangency_ellipse(p, q);
    const double k = std::exp(hyp::klein_distance(p, q));
    if (!o.svg.empty()) {
        SvgDocument svg;
        draw_base(svg, nullptr);
        // segments u2u3 of the family whose envelope is the ellipse
        for (int i = 0; i < 72; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / 72.0;
            const Vec2 u1{std::cos(theta), std::sin(theta)};
            svg.polyline({second_hit(u1, p.vec()), second_hit(u1, q.vec())}, "#b0b0b0", 0.002);
        }
        svg.polyline({e.frame.t1_cartesian(), e.frame.t2_cartesian()}, "black");
        svg.ellipse(e.center(), e.frame.axis(), e.a, e.b, "#bf1f1f");
        svg.dot(p.vec(), "black");
        svg.dot(q.vec(), "black");
        write_file(o.svg, svg.str());
    }
    if (o.json) {
        json j;
        j["P"] = point_json(p.vec());
        j["Q"] = point_json(q.vec());
        j["t1"] = e.frame.t1().angle().turns();
        j["t2"] = e.frame.t2().angle().turns();
        j["t3"] = e.frame.t3().angle().turns();
        j["t4"] = e.frame.t4().angle().turns();
        j["u"] = e.frame.u();
        j["k"] = k;
        j["a"] = e.a;
        j["b"] = e.b;
        j["c"] = e.c;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "T1 = " << fixed7(e.frame.t1().angle().turns()) << "  T2 = " << fixed7(e.frame.t2().angle().turns())
        << "  T3 = " << fixed7(e.frame.t3().angle().turns()) << "  T4 = " << fixed7(e.frame.t4().angle().turns())
        << " turns\n";
    out << "u = " << fixed7(e.frame.u()) << "  k = " << fixed7(k) << '\n';
    out << "a = " << fixed7(e.a) << "  b = " << fixed7(e.b) << "  c = " << fixed7(e.c) << '\n';
    return kExitOk;
}

int cmd_inscribed(const Options& o, std::ostream& out)
{
    const Triangle t = parse_triangle(o.triangle);
    const ins::InscribedTriangles r = ins::construct_inscribed_triangles(t, o.band);
    if (!o.svg.empty()) {
        SvgDocument svg;
        draw_base(svg, &t);
        const char* colors[] = {"#1f5fbf", "#bf1f1f"};
        for (std::size_t i = 0; i < r.triangles.size(); ++i) {
            std::vector<Vec2> pts;
            for (const BoundaryPoint& b : r.triangles[i]) pts.push_back(b.cartesian());
            svg.polygon(pts, colors[i % 2], "none");
        }
        write_file(o.svg, svg.str());
    }
    if (o.json) {
        json j;
        j["triangle"] = triangle_json(t);
        j["m"] = r.count.count();
        j["widened_tolerance"] = r.widened_tolerance;
        json list = json::array();
        for (const auto& tri : r.triangles) {
            list.push_back(json::array({tri[0].angle().turns(), tri[1].angle().turns(), tri[2].angle().turns()}));
        }
        j["triangles"] = list;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "m = " << r.count.count() << ", " << r.triangles.size() << " inscribed triangle(s)"
        << (r.widened_tolerance ? " (tangential root, widened tolerance)" : "") << '\n';
    for (const auto& tri : r.triangles) {
        out << "  turns " << fixed7(tri[0].angle().turns()) << " " << fixed7(tri[1].angle().turns()) << " "
            << fixed7(tri[2].angle().turns()) << '\n';
    }
    return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto [p, q] = parse_chord(o.chord);
    const SweepResult r = sweep(p, q, o.grid, o.iters.value_or(1000));
    if (r.skipped > 0) {
        err << "sweep: skipped " << r.skipped << " cells outside the disk or on the chord line\n";
    }
    const std::string csv = sweep_csv(r);
    if (o.csv.empty()) {
        out << csv;
    } else {
        write_file(o.csv, csv);
        out << "wrote " << r.rows.size() << " rows to " << o.csv << '\n';
    }
    return kExitOk;
}

int cmd_mu(const Options& o, std::ostream& out, std::ostream& err)
{
    const cg::TriangleShape shape = parse_shape(o.shape);
    cg::InvarianceOptions opt;
    opt.samples = o.samples;
    try {
        const cg::MuEstimate mu = cg::mu_estimate(shape, o.tol, opt);
        if (o.json) {
            json j;
            j["lower"] = mu.lower;
            j["upper"] = mu.upper;
            j["samples"] = mu.samples;
            j["grid_resolution"] = mu.grid_resolution;
            j["iterations"] = mu.iterations;
            out << j.dump(2) << '\n';
            return kExitOk;
        }
        out << "mu in [" << fixed7(mu.lower) << ", " << fixed7(mu.upper) << "]  (" << mu.samples
            << " translations per scale, lattice spacing " << fixed7(mu.grid_resolution) << ", " << mu.iterations
            << " bisection steps)\n";
        return kExitOk;
    } catch (const cg::MuSearchError& e) {
        err << "error: " << e.what() << "; partial bracket [" << g17(e.partial().lower) << ", "
            << g17(e.partial().upper) << "]\n";
        return kExitGeometry;
    }
}

int thread_count(int requested)
{
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BARBILLIARDS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

SweepResult sweep(const DiskPoint& p, const DiskPoint& q, int grid, int iters, int threads)
{
    if (grid < 2) throw std::invalid_argument("--grid must be at least 2");
    if (iters < 1) throw std::invalid_argument("--iters must be positive");
    std::vector<Vec2> cells;
    SweepResult res;
    for (int j = 0; j < grid; ++j) {
        for (int i = 0; i < grid; ++i) {
            const Vec2 r{-1.0 + 2.0 * i / (grid - 1), -1.0 + 2.0 * j / (grid - 1)};
            if (!(r.norm2() < 1.0 - kBoundaryGuard) ||
                !(std::abs(twice_signed_area(p.vec(), q.vec(), r)) > kAreaGuard)) {
                ++res.skipped;
                continue;
            }
            cells.push_back(r);
        }
    }
    std::vector<std::optional<SweepRow>> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
            try {
                const Triangle t(p, q, DiskPoint(cells[k]));
                const ins::InscribedCount n = ins::count_inscribed(t);
                rows[k] = SweepRow{cells[k].x, cells[k].y, n.margin, n.count(), cm::rotation_number(t, iters).value};
            } catch (const std::domain_error&) {
                rows[k].reset();
            }
        }
    };
    const int n_threads = std::min<int>(thread_count(threads), static_cast<int>(std::max<std::size_t>(1, cells.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (auto& row : rows) {
        if (row) {
            res.rows.push_back(*row);
        } else {
            ++res.skipped;
        }
    }
    return res;
}

std::string sweep_csv(const SweepResult& r)
{
    std::string s = "rx,ry,margin,m,rho\n";
    char buf[160];
    for (const SweepRow& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%.17g\n", row.rx, row.ry, row.margin, row.m, row.rho);
        s += buf;
    }
    return s;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Bar billiards around a triangular obstacle in the unit disk"};
    app.name("barbilliards");
    app.require_subcommand(1);

    auto tri = [&](CLI::App* sub) { sub->add_option("-t,--triangle", o.triangle, "px,py:qx,qy:rx,ry or JSON")->required(); };
    auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };
    auto band = [&](CLI::App* sub) { sub->add_option("--band", o.band, "boundary band on delta - gap"); };
    auto svg = [&](CLI::App* sub) { sub->add_option("--svg", o.svg, "write an SVG figure"); };

    CLI::App* classify = app.add_subcommand("classify", "count inscribed triangles three ways");
    tri(classify);
    band(classify);
    json_flag(classify);

    CLI::App* rotation = app.add_subcommand("rotation", "estimate the rotation number");
    tri(rotation);
    rotation->add_option("--iters", o.iters, "iterations (default 100000)");
    json_flag(rotation);

    CLI::App* orbit = app.add_subcommand("orbit", "iterate the circle map");
    tri(orbit);
    orbit->add_option("--start", o.start, "starting angle in turns");
    orbit->add_option("--steps", o.steps, "number of steps");
    svg(orbit);
    json_flag(orbit);

    CLI::App* ellipse = app.add_subcommand("ellipse", "tangency ellipse of a chord");
    ellipse->add_option("--chord", o.chord, "px,py:qx,qy")->required();
    svg(ellipse);
    json_flag(ellipse);

    CLI::App* inscribed = app.add_subcommand("inscribed", "construct the inscribed triangles");
    tri(inscribed);
    band(inscribed);
    svg(inscribed);
    json_flag(inscribed);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "classify third vertices over a grid");
    sweep_cmd->add_option("--chord", o.chord, "px,py:qx,qy")->required();
    sweep_cmd->add_option("--grid", o.grid, "points per axis");
    sweep_cmd->add_option("--iters", o.iters, "rotation-number iterations per cell (default 1000)");
    sweep_cmd->add_option("--csv", o.csv, "write CSV here instead of stdout");

    CLI::App* mu = app.add_subcommand("mu", "bracket the critical scale mu of a shape");
    mu->add_option("--shape", o.shape, "equilateral or a:b:c");
    mu->add_option("--tol", o.tol, "bracket width");
    mu->add_option("--samples", o.samples, "translations per scale");
    json_flag(mu);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*classify) return cmd_classify(o, out);
        if (*rotation) return cmd_rotation(o, out);
        if (*orbit) return cmd_orbit(o, out);
        if (*ellipse) return cmd_ellipse(o, out);
        if (*inscribed) return cmd_inscribed(o, out);
        if (*sweep_cmd) return cmd_sweep(o, out, err);
        if (*mu) return cmd_mu(o, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitGeometry;
    }
    return kExitParse;
}

}  // namespace barbilliards::cli
