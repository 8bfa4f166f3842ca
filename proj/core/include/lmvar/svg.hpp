#ifndef LMVAR_SVG_HPP
#define LMVAR_SVG_HPP

#include <optional>
#include <string>
#include <vector>

#include "lmvar/geometry.hpp"
#include "lmvar/space.hpp"

namespace lmvar {

/// One landmark's annotation cloud on a scan: the rater points, their
/// centroid, and (given two or more points) the covariance ellipse.
struct ScatterPanel {
  int landmark_id = 0;
  std::vector<MmPoint> points_mm;
  MmPoint centroid_mm;
  std::optional<EllipseParams> ellipse;  // axes in mm
};

/// Deterministic SVG: scatter per landmark with 2-sigma ellipses, axes in
/// mm. Identical input yields identical bytes.
std::string render_scan_svg(const std::string& scan_id,
                            const std::vector<ScatterPanel>& panels,
                            double extent_x_mm, double extent_y_mm);

}  // namespace lmvar

#endif  // LMVAR_SVG_HPP
