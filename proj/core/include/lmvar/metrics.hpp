#ifndef LMVAR_METRICS_HPP
#define LMVAR_METRICS_HPP

#include <span>
#include <string>
#include <vector>

#include "lmvar/annotation.hpp"
#include "lmvar/geometry.hpp"
#include "lmvar/space.hpp"

namespace lmvar {

struct MetricConfig {
  double epsilon_aniso = 1e-6;   // mm, guards the anisotropy denominator
  double epsilon_wcvar = 1e-6;   // heatmap units, guards the weight denominator

  void validate() const;
};

/// Mean Euclidean distance of the points to their centroid (mm).
double cvar(const PointCloud& cloud);

/// Square root of the largest eigenvalue of the population covariance (mm):
/// spread along the principal axis.
double psv(const PointCloud& cloud);

/// sqrt(lambda_max) / (sqrt(lambda_min) + epsilon): elongation of the cloud.
/// A zero-covariance cloud yields 0.
double anisotropy(const PointCloud& cloud, const MetricConfig& cfg = {});

/// CVar with per-point weights proportional to 1/(heatmap_max + epsilon),
/// normalized to sum 1. The centroid stays unweighted. An empty weight
/// span means equal weights, which makes wcvar coincide with cvar.
double wcvar(const PointCloud& cloud, std::span<const double> heatmap_max,
             const MetricConfig& cfg = {});

/// wcvar over a sample set, converted into mm in `metric_space`.
double wcvar(const SampleSet& samples, const CoordinateSpace& metric_space,
             const MetricConfig& cfg = {});

/// Rater annotations as an mm point cloud in `metric_space`.
PointCloud annotation_cloud_mm(const AnnotationSet& set,
                               const CoordinateSpace& metric_space);

/// Prediction samples as an mm point cloud in `metric_space`.
PointCloud sample_cloud_mm(const SampleSet& set, const CoordinateSpace& metric_space);

std::vector<double> heatmap_max_values(const SampleSet& set);

struct LandmarkMetrics {
  double cvar_mm = 0.0;
  double psv_mm = 0.0;
  double anisotropy = 0.0;
  double wcvar_mm = 0.0;
};

/// Names in the order metrics appear in reports.
const std::vector<std::string>& metric_names();
double metric_value(const LandmarkMetrics& m, const std::string& name);

LandmarkMetrics compute_metrics(const PointCloud& cloud,
                                std::span<const double> heatmap_max,
                                const MetricConfig& cfg = {});

/// Arithmetic mean per metric over all (scan, landmark) entries.
LandmarkMetrics mean_metrics(const std::vector<LandmarkMetrics>& rows);

}  // namespace lmvar

#endif  // LMVAR_METRICS_HPP
