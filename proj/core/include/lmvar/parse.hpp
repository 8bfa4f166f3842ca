#ifndef LMVAR_PARSE_HPP
#define LMVAR_PARSE_HPP

#include <istream>
#include <string>
#include <vector>

#include "lmvar/space.hpp"

namespace lmvar {

/// Parses an ISBI-style annotation text file: leading lines are "x,y"
/// decimal pairs, one landmark per line. The first line without a comma
/// starts the trailer (stage labels and similar), which is ignored. A
/// comma-carrying line that is not exactly two decimals is a ParseError
/// with its line number; a file with no coordinate lines is a ParseError.
std::vector<LandmarkPoint> parse_isbi_annotation_file(std::istream& text,
                                                      const CoordinateSpace& space,
                                                      const std::string& rater_id);

std::vector<LandmarkPoint> parse_isbi_annotation_file(const std::string& text,
                                                      const CoordinateSpace& space,
                                                      const std::string& rater_id);

/// Inverse of the parser for the coordinate section: one "x,y" line per
/// point, shortest round-trip decimal formatting.
std::string serialize_isbi_annotation_lines(const std::vector<LandmarkPoint>& points);

}  // namespace lmvar

#endif  // LMVAR_PARSE_HPP
