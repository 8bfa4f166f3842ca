#include "lmvar/heatmap.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "lmvar/errors.hpp"

namespace lmvar {

namespace {

void put_u32_le(std::ostream& out, std::uint32_t value) {
  const char bytes[4] = {
      static_cast<char>(value & 0xFF), static_cast<char>((value >> 8) & 0xFF),
      static_cast<char>((value >> 16) & 0xFF), static_cast<char>((value >> 24) & 0xFF)};
  out.write(bytes, 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) {
    throw ParseError("heatmap dump: truncated header");
  }
  return static_cast<std::uint32_t>(bytes[0]) |
         (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

}  // namespace

Heatmap::Heatmap(CoordinateSpace space) : space_(std::move(space)) {
  space_.validate();
  values_.assign(static_cast<std::size_t>(space_.height_px) *
                     static_cast<std::size_t>(space_.width_px),
                 0.0);
}

Heatmap::Heatmap(CoordinateSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  space_.validate();
  const std::size_t expected = static_cast<std::size_t>(space_.height_px) *
                               static_cast<std::size_t>(space_.width_px);
  if (values_.size() != expected) {
    throw DataError("heatmap: value count does not match the space dimensions");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DataError("heatmap: values must be finite and non-negative");
    }
  }
}

Heatmap render_gaussian(const LandmarkPoint& center, double sigma_px,
                        const CoordinateSpace& space) {
  if (!(sigma_px > 0.0)) {
    throw DataError("render_gaussian: sigma must be positive");
  }
  require_finite(center, "render_gaussian center");
  space.validate();
  const LandmarkPoint local = convert_space(center, space);

  // Separable: exp(-(dx^2+dy^2)/2s^2) = col_factor * row_factor.
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma_px * sigma_px);
  std::vector<double> col_factor(static_cast<std::size_t>(space.width_px));
  for (int c = 0; c < space.width_px; ++c) {
    const double dx = static_cast<double>(c) - local.x;
    col_factor[static_cast<std::size_t>(c)] = std::exp(-dx * dx * inv_two_sigma2);
  }

  Heatmap heatmap(space);
  for (int r = 0; r < space.height_px; ++r) {
    const double dy = static_cast<double>(r) - local.y;
    const double row_factor = std::exp(-dy * dy * inv_two_sigma2);
    for (int c = 0; c < space.width_px; ++c) {
      heatmap.at(r, c) = row_factor * col_factor[static_cast<std::size_t>(c)];
    }
  }
  return heatmap;
}

DecodeResult decode_argmax(const Heatmap& heatmap) {
  const std::vector<double>& values = heatmap.values();
  if (values.empty()) {
    throw DataError("decode_argmax: empty grid");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;  // strict '>' keeps the first (smallest row, then column) maximum
    }
  }
  const int row = static_cast<int>(best / static_cast<std::size_t>(heatmap.width()));
  const int col = static_cast<int>(best % static_cast<std::size_t>(heatmap.width()));
  return DecodeResult{
      LandmarkPoint{static_cast<double>(col), static_cast<double>(row), heatmap.space()},
      values[best]};
}

double pseudo_confidence(const Heatmap& heatmap) {
  return decode_argmax(heatmap).max_value;
}

void write_heatmap(std::ostream& out, const Heatmap& heatmap) {
  put_u32_le(out, static_cast<std::uint32_t>(heatmap.height()));
  put_u32_le(out, static_cast<std::uint32_t>(heatmap.width()));
  for (double v : heatmap.values()) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    put_u32_le(out, bits);
  }
  if (!out) {
    throw DataError("heatmap dump: write failed");
  }
}

Heatmap read_heatmap(std::istream& in, const CoordinateSpace& space) {
  const std::uint32_t height = get_u32_le(in);
  const std::uint32_t width = get_u32_le(in);
  if (height != static_cast<std::uint32_t>(space.height_px) ||
      width != static_cast<std::uint32_t>(space.width_px)) {
    throw DataError("heatmap dump: dimensions do not match the coordinate space");
  }
  std::vector<double> values(static_cast<std::size_t>(height) *
                             static_cast<std::size_t>(width));
  for (double& v : values) {
    v = static_cast<double>(std::bit_cast<float>(get_u32_le(in)));
  }
  return Heatmap(space, std::move(values));
}

}  // namespace lmvar
