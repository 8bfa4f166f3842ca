#include "lmvar/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace lmvar {

namespace {

constexpr double kPxPerMm = 3.0;
constexpr double kMargin = 40.0;  // viewport px reserved for axes

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.3f", value);
  return buffer;
}

}  // namespace

std::string render_scan_svg(const std::string& scan_id,
                            const std::vector<ScatterPanel>& panels,
                            double extent_x_mm, double extent_y_mm) {
  const double plot_w = extent_x_mm * kPxPerMm;
  const double plot_h = extent_y_mm * kPxPerMm;
  const double width = plot_w + 2.0 * kMargin;
  const double height = plot_h + 2.0 * kMargin;

  const auto sx = [&](double x_mm) { return kMargin + x_mm * kPxPerMm; };
  const auto sy = [&](double y_mm) { return kMargin + y_mm * kPxPerMm; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
         num(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kMargin) + "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"16\">scan " + scan_id + "</text>\n";

  // Frame and mm tick labels every 50 mm.
  svg += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" +
         num(plot_w) + "\" height=\"" + num(plot_h) +
         "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  for (double tick = 0.0; tick <= extent_x_mm; tick += 50.0) {
    svg += "<line x1=\"" + num(sx(tick)) + "\" y1=\"" + num(kMargin + plot_h) +
           "\" x2=\"" + num(sx(tick)) + "\" y2=\"" + num(kMargin + plot_h + 5.0) +
           "\" stroke=\"#444444\"/>\n";
    svg += "<text x=\"" + num(sx(tick)) + "\" y=\"" + num(kMargin + plot_h + 18.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" +
           num(tick) + "</text>\n";
  }
  for (double tick = 0.0; tick <= extent_y_mm; tick += 50.0) {
    svg += "<line x1=\"" + num(kMargin - 5.0) + "\" y1=\"" + num(sy(tick)) +
           "\" x2=\"" + num(kMargin) + "\" y2=\"" + num(sy(tick)) +
           "\" stroke=\"#444444\"/>\n";
    svg += "<text x=\"" + num(kMargin - 8.0) + "\" y=\"" + num(sy(tick) + 3.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" +
           num(tick) + "</text>\n";
  }
  svg += "<text x=\"" + num(kMargin + plot_w / 2.0) + "\" y=\"" +
         num(height - 6.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">x (mm)"
         "</text>\n";
  svg += "<text x=\"12\" y=\"" + num(kMargin + plot_h / 2.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 12 " + num(kMargin + plot_h / 2.0) + ")\">y (mm)"
         "</text>\n";

  for (const auto& panel : panels) {
    const char* color =
        kPalette[static_cast<std::size_t>(panel.landmark_id) % std::size(kPalette)];
    svg += "<g fill=\"" + std::string(color) + "\" stroke=\"" + color + "\">\n";

    if (panel.ellipse) {
      const EllipseParams& e = *panel.ellipse;
      const double angle_deg = e.angle_rad * 180.0 / std::numbers::pi;
      svg += "<ellipse cx=\"0\" cy=\"0\" rx=\"" + num(e.semi_axes[0] * kPxPerMm) +
             "\" ry=\"" + num(e.semi_axes[1] * kPxPerMm) +
             "\" fill-opacity=\"0.12\" stroke-width=\"1.2\" transform=\"translate(" +
             num(sx(e.center[0])) + " " + num(sy(e.center[1])) + ") rotate(" +
             num(angle_deg) + ")\"/>\n";
    }

    for (const auto& p : panel.points_mm) {
      svg += "<circle cx=\"" + num(sx(p.x)) + "\" cy=\"" + num(sy(p.y)) +
             "\" r=\"2.2\" stroke=\"none\"/>\n";
    }

    // Centroid cross
    const double cx = sx(panel.centroid_mm.x);
    const double cy = sy(panel.centroid_mm.y);
    svg += "<line x1=\"" + num(cx - 4.0) + "\" y1=\"" + num(cy) + "\" x2=\"" +
           num(cx + 4.0) + "\" y2=\"" + num(cy) + "\" stroke-width=\"1.4\"/>\n";
    svg += "<line x1=\"" + num(cx) + "\" y1=\"" + num(cy - 4.0) + "\" x2=\"" +
           num(cx) + "\" y2=\"" + num(cy + 4.0) + "\" stroke-width=\"1.4\"/>\n";

    svg += "<text x=\"" + num(cx + 7.0) + "\" y=\"" + num(cy - 7.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\" stroke=\"none\">L" +
           std::to_string(panel.landmark_id) + "</text>\n";
    svg += "</g>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace lmvar
