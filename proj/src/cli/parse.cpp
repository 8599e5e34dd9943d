#include "barbilliards/cli_io.hpp"

#include "json.hpp"

#include <array>
#include <charconv>
#include <cctype>

namespace barbilliards::cli {

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& s) : s_(s) {}

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    double number()
    {
        skip_ws();
        const char* begin = s_.data() + pos_;
        const char* end = s_.data() + s_.size();
        // from_chars rejects a leading '+'
        if (begin != end && *begin == '+') ++begin;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr == begin) {
            throw ParseError("expected a number", pos_);
        }
        if (!std::isfinite(v)) {
            throw ParseError("number is not finite", pos_);
        }
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    void finish()
    {
        skip_ws();
        if (pos_ != s_.size()) {
            throw ParseError("unexpected trailing input", pos_);
        }
    }

    Vec2 point()
    {
        const double x = number();
        expect(',');
        const double y = number();
        return {x, y};
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

Vec2 json_point(const nlohmann::json& doc, const char* key)
{
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw ParseError(std::string("missing key \"") + key + "\"", 0);
    }
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
        throw ParseError(std::string("key \"") + key + "\" must be an array of two numbers", 0);
    }
    return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

bool starts_with_brace(const std::string& s)
{
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

}  // namespace

Triangle parse_triangle(const std::string& spec)
{
    std::array<Vec2, 3> v;
    if (starts_with_brace(spec)) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(spec);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("invalid JSON triangle", e.byte);
        }
        if (!doc.is_object()) {
            throw ParseError("JSON triangle must be an object", 0);
        }
        v = {json_point(doc, "P"), json_point(doc, "Q"), json_point(doc, "R")};
    } else {
        Cursor c(spec);
        v[0] = c.point();
        c.expect(':');
        v[1] = c.point();
        c.expect(':');
        v[2] = c.point();
        c.finish();
    }
    return Triangle(DiskPoint(v[0]), DiskPoint(v[1]), DiskPoint(v[2]));
}

std::pair<DiskPoint, DiskPoint> parse_chord(const std::string& spec)
{
    Cursor c(spec);
    const Vec2 p = c.point();
    c.expect(':');
    const Vec2 q = c.point();
    c.finish();
    DiskPoint dp(p);
    DiskPoint dq(q);
    if ((q - p).norm() <= 1e-12) {
        throw GeometryError("degenerate chord: coincident points");
    }
    return {dp, dq};
}

congruence::TriangleShape parse_shape(const std::string& spec)
{
    std::string lower;
    for (char ch : spec) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "equilateral") return congruence::TriangleShape::equilateral();
    Cursor c(spec);
    const double a = c.number();
    c.expect(':');
    const double b = c.number();
    c.expect(':');
    const double d = c.number();
    c.finish();
    return congruence::TriangleShape(a, b, d);
}

}  // namespace barbilliards::cli
