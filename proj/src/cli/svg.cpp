#include "barbilliards/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace barbilliards::cli {

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string points_attr(const std::vector<Vec2>& pts)
{
    std::string s;
    for (const Vec2 p : pts) {
        if (!s.empty()) s += ' ';
        s += num(p.x) + ',' + num(p.y);
    }
    return s;
}

}  // namespace

SvgDocument::SvgDocument() = default;

void SvgDocument::circle(Vec2 center, double radius, const std::string& stroke, double width)
{
    body_ += "    <circle cx=\"" + num(center.x) + "\" cy=\"" + num(center.y) + "\" r=\"" + num(radius) +
             "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void SvgDocument::polygon(const std::vector<Vec2>& pts, const std::string& stroke, const std::string& fill,
                          double width)
{
    body_ += "    <polygon points=\"" + points_attr(pts) + "\" fill=\"" + fill + "\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void SvgDocument::polyline(const std::vector<Vec2>& pts, const std::string& stroke, double width)
{
    body_ += "    <polyline points=\"" + points_attr(pts) + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void SvgDocument::ellipse(Vec2 center, Vec2 axis, double a, double b, const std::string& stroke, double width)
{
    const double deg = std::atan2(axis.y, axis.x) * 180.0 / std::numbers::pi;
    body_ += "    <ellipse cx=\"" + num(center.x) + "\" cy=\"" + num(center.y) + "\" rx=\"" + num(a) +
             "\" ry=\"" + num(b) + "\" transform=\"rotate(" + num(deg) + ' ' + num(center.x) + ' ' +
             num(center.y) + ")\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
             "\"/>\n";
}

void SvgDocument::dot(Vec2 p, const std::string& fill, double radius)
{
    body_ += "    <circle cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" + num(radius) + "\" fill=\"" +
             fill + "\"/>\n";
}

std::string SvgDocument::str() const
{
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
           "width=\"600\" height=\"600\">\n"
           "  <g transform=\"scale(1,-1)\">\n" +
           body_ + "  </g>\n</svg>\n";
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path + " for writing");
    }
    f << text;
    f.flush();
    if (!f) {
        throw IoError("failed writing " + path);
    }
}

}  // namespace barbilliards::cli
