#ifndef LMVAR_HEATMAP_HPP
#define LMVAR_HEATMAP_HPP

#include <iosfwd>
#include <vector>

#include "lmvar/space.hpp"

namespace lmvar {

/// A dense non-negative grid over a coordinate space, row-major.
class Heatmap {
 public:
  explicit Heatmap(CoordinateSpace space);
  Heatmap(CoordinateSpace space, std::vector<double> values);

  int height() const { return space_.height_px; }
  int width() const { return space_.width_px; }
  const CoordinateSpace& space() const { return space_; }

  double at(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width()) +
                   static_cast<std::size_t>(col)];
  }
  double& at(int row, int col) {
    return values_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width()) +
                   static_cast<std::size_t>(col)];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  CoordinateSpace space_;
  std::vector<double> values_;
};

/// Unnormalized isotropic Gaussian target: exp(-((c-x)^2+(r-y)^2)/(2 sigma^2)).
/// Peak value is 1 at the pixel nearest the center when the center is on-grid.
Heatmap render_gaussian(const LandmarkPoint& center, double sigma_px,
                        const CoordinateSpace& space);

struct DecodeResult {
  LandmarkPoint point;   // integer pixel coordinates of the maximal cell
  double max_value = 0;  // the cell's value
};

/// Coordinates of the maximal cell; ties break to the smallest row, then
/// the smallest column.
DecodeResult decode_argmax(const Heatmap& heatmap);

/// The maximal heatmap value: the pseudo-confidence consumed by wcvar.
double pseudo_confidence(const Heatmap& heatmap);

// Binary dump for trainer interop and debugging: two little-endian
// uint32 dims (height, width), then row-major little-endian float32.
void write_heatmap(std::ostream& out, const Heatmap& heatmap);
Heatmap read_heatmap(std::istream& in, const CoordinateSpace& space);

}  // namespace lmvar

#endif  // LMVAR_HEATMAP_HPP
