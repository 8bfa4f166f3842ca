#include "lmvar/space.hpp"

#include <cmath>

#include "lmvar/errors.hpp"

namespace lmvar {

void CoordinateSpace::validate() const {
  if (width_px <= 0 || height_px <= 0) {
    throw DataError("coordinate space '" + space_id + "': pixel dimensions must be positive");
  }
  if (!(mm_per_px_x > 0.0) || !(mm_per_px_y > 0.0)) {
    throw DataError("coordinate space '" + space_id + "': mm-per-pixel scales must be positive");
  }
}

CoordinateSpace isbi_original_space() {
  return CoordinateSpace{1935, 2400, 0.1, 0.1, "isbi_original"};
}

CoordinateSpace isbi_downsampled_space() {
  // Per-axis scale keeps mm coordinates identical to the original space:
  // 0.1 * 1935/640 horizontally, 0.1 * 2400/800 vertically.
  return CoordinateSpace{640, 800, 0.1 * 1935.0 / 640.0, 0.1 * 2400.0 / 800.0,
                         "isbi_downsampled"};
}

LandmarkPoint convert_space(const LandmarkPoint& p, const CoordinateSpace& target) {
  p.space.validate();
  target.validate();
  if (p.space == target) {
    return p;
  }
  const double sx = static_cast<double>(target.width_px) / p.space.width_px;
  const double sy = static_cast<double>(target.height_px) / p.space.height_px;
  return LandmarkPoint{p.x * sx, p.y * sy, target};
}

MmPoint to_mm(const LandmarkPoint& p) {
  p.space.validate();
  return MmPoint{p.x * p.space.mm_per_px_x, p.y * p.space.mm_per_px_y};
}

double distance_mm(const MmPoint& a, const MmPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool in_bounds(const LandmarkPoint& p) {
  return p.x >= 0.0 && p.x <= p.space.width_px - 1 && p.y >= 0.0 &&
         p.y <= p.space.height_px - 1;
}

void require_finite(const LandmarkPoint& p, const std::string& context) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw DataError(context + ": coordinates must be finite");
  }
}

}  // namespace lmvar
