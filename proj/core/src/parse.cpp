#include "lmvar/parse.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "lmvar/errors.hpp"

namespace lmvar {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_decimal(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) {
    return false;
  }
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace

std::vector<LandmarkPoint> parse_isbi_annotation_file(std::istream& text,
                                                      const CoordinateSpace& space,
                                                      const std::string& rater_id) {
  space.validate();
  std::vector<LandmarkPoint> points;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(text, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    const std::size_t comma = view.find(',');
    if (comma == std::string_view::npos) {
      break;  // trailer begins: stage labels and similar, not coordinates
    }
    const std::string_view rest = view.substr(comma + 1);
    double x = 0.0;
    double y = 0.0;
    if (rest.find(',') != std::string_view::npos ||
        !parse_decimal(view.substr(0, comma), x) || !parse_decimal(rest, y)) {
      throw ParseError("rater '" + rater_id + "': expected 'x,y' decimals, got '" +
                           std::string(view) + "'",
                       line_no);
    }
    points.push_back(LandmarkPoint{x, y, space});
  }

  if (points.empty()) {
    if (line_no == 0) {
      throw ParseError("rater '" + rater_id + "': empty file");
    }
    throw ParseError("rater '" + rater_id + "': no coordinate lines found", 1);
  }
  return points;
}

std::vector<LandmarkPoint> parse_isbi_annotation_file(const std::string& text,
                                                      const CoordinateSpace& space,
                                                      const std::string& rater_id) {
  std::istringstream stream(text);
  return parse_isbi_annotation_file(stream, space, rater_id);
}

std::string serialize_isbi_annotation_lines(const std::vector<LandmarkPoint>& points) {
  std::string out;
  char buffer[64];
  for (const auto& p : points) {
    for (int axis = 0; axis < 2; ++axis) {
      const double value = axis == 0 ? p.x : p.y;
      const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
      if (ec != std::errc{}) {
        throw InternalError("failed to format coordinate");
      }
      out.append(buffer, ptr);
      out.push_back(axis == 0 ? ',' : '\n');
    }
  }
  return out;
}

}  // namespace lmvar
