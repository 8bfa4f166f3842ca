#ifndef LMVAR_SPACE_HPP
#define LMVAR_SPACE_HPP

#include <array>
#include <string>

namespace lmvar {

/// A pixel grid together with its physical scale. All pixel<->mm
/// conversion goes through one of these; points are meaningless
/// without the space they were measured in.
struct CoordinateSpace {
  int width_px = 0;
  int height_px = 0;
  double mm_per_px_x = 0.0;
  double mm_per_px_y = 0.0;
  std::string space_id;

  /// Throws DataError unless all dimensions and scales are strictly positive.
  void validate() const;

  bool operator==(const CoordinateSpace&) const = default;
};

/// Cephalometric X-ray native resolution: 1935x2400 px at 0.1x0.1 mm.
CoordinateSpace isbi_original_space();

/// 640x800 px working resolution; mm scale derived per axis from the
/// original so that physical coordinates are preserved (~0.302 x 0.300).
CoordinateSpace isbi_downsampled_space();

/// A 2D point in pixel coordinates of a declared space. Coordinates may
/// fall outside the grid (raters can mark near or past the crop); such
/// points are flagged on ingestion, not rejected.
struct LandmarkPoint {
  double x = 0.0;
  double y = 0.0;
  CoordinateSpace space;
};

struct MmPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Rescales a point into `target` by the width/height ratio of the grids.
/// Round-trips within 1e-9 px.
LandmarkPoint convert_space(const LandmarkPoint& p, const CoordinateSpace& target);

MmPoint to_mm(const LandmarkPoint& p);

double distance_mm(const MmPoint& a, const MmPoint& b);

/// True when the point lies on the grid: 0 <= x <= width-1, 0 <= y <= height-1.
bool in_bounds(const LandmarkPoint& p);

/// Throws DataError if a coordinate is NaN or infinite.
void require_finite(const LandmarkPoint& p, const std::string& context);

}  // namespace lmvar

#endif  // LMVAR_SPACE_HPP
