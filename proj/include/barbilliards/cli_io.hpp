#pragma once

// Command-line front end. Everything that reads arguments, formats numbers
// or touches files lives here; the other modules stay pure.

#include "barbilliards/congruence_search.hpp"
#include "barbilliards/geometry.hpp"
#include "barbilliards/inscribed_classifier.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace barbilliards::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitGeometry = 3,
    kExitIo = 4,
};

/// Malformed textual input; `position` is the byte offset of the problem.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "px,py:qx,qy:rx,ry" or {"P":[x,y],"Q":[x,y],"R":[x,y]}. Syntax problems
/// raise ParseError; points outside the disk or a degenerate triangle raise
/// GeometryError.
Triangle parse_triangle(const std::string& spec);
/// "px,py:qx,qy".
std::pair<DiskPoint, DiskPoint> parse_chord(const std::string& spec);
/// "equilateral" or side ratios "a:b:c".
congruence::TriangleShape parse_shape(const std::string& spec);

/// Plain SVG in the fixed viewBox [-1.05, 1.05]^2 with y pointing up.
class SvgDocument {
public:
    SvgDocument();

    void circle(Vec2 center, double radius, const std::string& stroke, double width = 0.004);
    void polygon(const std::vector<Vec2>& pts, const std::string& stroke, const std::string& fill,
                 double width = 0.004);
    void polyline(const std::vector<Vec2>& pts, const std::string& stroke, double width = 0.003);
    /// Ellipse with semi-axes a (along `axis`) and b, centered at `center`.
    void ellipse(Vec2 center, Vec2 axis, double a, double b, const std::string& stroke,
                 double width = 0.004);
    void dot(Vec2 p, const std::string& fill, double radius = 0.012);

    std::string str() const;

private:
    std::string body_;
};

/// Writes text to path, raising IoError on failure.
void write_file(const std::string& path, const std::string& text);

/// One sweep cell: R = (rx, ry) as third vertex over a fixed chord.
struct SweepRow {
    double rx = 0.0;
    double ry = 0.0;
    double margin = 0.0;
    int m = 0;
    double rho = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int skipped = 0;
};

/// Grid of grid x grid points over [-1, 1]^2 in row-major order (y outer,
/// both ascending). Cells outside the disk or collinear with the chord are
/// skipped. `threads` <= 0 reads BARBILLIARDS_THREADS, falling back to the
/// hardware concurrency.
SweepResult sweep(const DiskPoint& p, const DiskPoint& q, int grid, int iters, int threads = 0);

std::string sweep_csv(const SweepResult& r);

/// Runs one command line; output and diagnostics go to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace barbilliards::cli
