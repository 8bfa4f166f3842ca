#include "lmvar/metrics.hpp"

#include <cmath>

#include "lmvar/errors.hpp"

namespace lmvar {

namespace {

std::vector<double> distances_to_centroid(const PointCloud& cloud) {
  const int n = cloud.dim();
  const std::size_t count = cloud.size();

  std::array<double, 3> mean{};
  for (int axis = 0; axis < n; ++axis) {
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      sum += cloud.at(i, axis);
    }
    mean[static_cast<std::size_t>(axis)] = sum / static_cast<double>(count);
  }

  std::vector<double> distances(count);
  for (std::size_t i = 0; i < count; ++i) {
    double d2 = 0.0;
    for (int axis = 0; axis < n; ++axis) {
      const double d = cloud.at(i, axis) - mean[static_cast<std::size_t>(axis)];
      d2 += d * d;
    }
    distances[i] = std::sqrt(d2);
  }
  return distances;
}

MmPoint point_mm(const LandmarkPoint& p, const CoordinateSpace& metric_space) {
  return to_mm(convert_space(p, metric_space));
}

}  // namespace

void MetricConfig::validate() const {
  if (!(epsilon_aniso > 0.0) || !(epsilon_wcvar > 0.0)) {
    throw DataError("metric config: epsilons must be strictly positive");
  }
}

double cvar(const PointCloud& cloud) {
  const std::vector<double> distances = distances_to_centroid(cloud);
  double sum = 0.0;
  for (double d : distances) {
    sum += d;
  }
  return sum / static_cast<double>(distances.size());
}

double psv(const PointCloud& cloud) {
  return std::sqrt(summarize(cloud).eigenvalues[0]);
}

double anisotropy(const PointCloud& cloud, const MetricConfig& cfg) {
  cfg.validate();
  const CovarianceSummary summary = summarize(cloud);
  const double largest = std::sqrt(summary.eigenvalues[0]);
  const double smallest =
      std::sqrt(summary.eigenvalues[static_cast<std::size_t>(summary.dim - 1)]);
  return largest / (smallest + cfg.epsilon_aniso);
}

double wcvar(const PointCloud& cloud, std::span<const double> heatmap_max,
             const MetricConfig& cfg) {
  cfg.validate();
  const std::size_t count = cloud.size();
  if (!heatmap_max.empty() && heatmap_max.size() != count) {
    throw DataError("wcvar: heatmap_max count does not match point count");
  }

  const std::vector<double> distances = distances_to_centroid(cloud);

  if (heatmap_max.empty()) {
    double sum = 0.0;
    for (double d : distances) {
      sum += d / static_cast<double>(count);
    }
    return sum;
  }

  std::vector<double> inverse(count);
  double inverse_sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (heatmap_max[i] < 0.0) {
      throw DataError("wcvar: heatmap_max must be non-negative");
    }
    inverse[i] = 1.0 / (heatmap_max[i] + cfg.epsilon_wcvar);
    inverse_sum += inverse[i];
  }

  double result = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    result += (inverse[i] / inverse_sum) * distances[i];
  }
  return result;
}

double wcvar(const SampleSet& samples, const CoordinateSpace& metric_space,
             const MetricConfig& cfg) {
  return wcvar(sample_cloud_mm(samples, metric_space), heatmap_max_values(samples), cfg);
}

PointCloud annotation_cloud_mm(const AnnotationSet& set,
                               const CoordinateSpace& metric_space) {
  std::vector<std::array<double, 2>> points;
  points.reserve(set.n_raters());
  for (const auto& [rater_id, point] : set.rater_points()) {
    const MmPoint mm = point_mm(point, metric_space);
    points.push_back({mm.x, mm.y});
  }
  return PointCloud::from_2d(std::move(points));
}

PointCloud sample_cloud_mm(const SampleSet& set, const CoordinateSpace& metric_space) {
  std::vector<std::array<double, 2>> points;
  points.reserve(set.size());
  for (const auto& sample : set.samples()) {
    const MmPoint mm = point_mm(sample.point, metric_space);
    points.push_back({mm.x, mm.y});
  }
  return PointCloud::from_2d(std::move(points));
}

std::vector<double> heatmap_max_values(const SampleSet& set) {
  std::vector<double> values;
  if (!set.has_heatmap_max()) {
    return values;
  }
  values.reserve(set.size());
  for (const auto& sample : set.samples()) {
    values.push_back(*sample.heatmap_max);
  }
  return values;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names{"cvar", "psv", "anisotropy", "wcvar"};
  return names;
}

double metric_value(const LandmarkMetrics& m, const std::string& name) {
  if (name == "cvar") return m.cvar_mm;
  if (name == "psv") return m.psv_mm;
  if (name == "anisotropy") return m.anisotropy;
  if (name == "wcvar") return m.wcvar_mm;
  throw InternalError("unknown metric '" + name + "'");
}

LandmarkMetrics compute_metrics(const PointCloud& cloud,
                                std::span<const double> heatmap_max,
                                const MetricConfig& cfg) {
  LandmarkMetrics out;
  out.cvar_mm = cvar(cloud);
  out.psv_mm = psv(cloud);
  out.anisotropy = anisotropy(cloud, cfg);
  out.wcvar_mm = wcvar(cloud, heatmap_max, cfg);
  return out;
}

LandmarkMetrics mean_metrics(const std::vector<LandmarkMetrics>& rows) {
  if (rows.empty()) {
    throw DataError("mean_metrics: no rows to aggregate");
  }
  LandmarkMetrics sum;
  for (const auto& row : rows) {
    sum.cvar_mm += row.cvar_mm;
    sum.psv_mm += row.psv_mm;
    sum.anisotropy += row.anisotropy;
    sum.wcvar_mm += row.wcvar_mm;
  }
  const double count = static_cast<double>(rows.size());
  return LandmarkMetrics{sum.cvar_mm / count, sum.psv_mm / count,
                         sum.anisotropy / count, sum.wcvar_mm / count};
}

}  // namespace lmvar
