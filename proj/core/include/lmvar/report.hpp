#ifndef LMVAR_REPORT_HPP
#define LMVAR_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lmvar/corpus.hpp"
#include "lmvar/evaluation.hpp"
#include "lmvar/fusion.hpp"
#include "lmvar/metrics.hpp"

namespace lmvar {

/// Every report embeds the full configuration so a run can be reproduced
/// from its outputs alone.
struct ReportMetadata {
  std::uint64_t seed = 1;
  int n_folds = 4;
  int bin_size = 5;
  std::string bin_order = "index";
  double epsilon_aniso = 1e-6;
  double epsilon_wcvar = 1e-6;
  std::string metric_space_id;
  std::vector<double> sdr_thresholds_mm;
  std::string partial_bin_rule = "keep_if_at_least_half_full";
  std::string aggregation = "mean_over_scan_landmark_pairs_pooled_across_folds";
  std::string ground_truth = "silver_mean_of_raters";
};

struct MetricRow {
  PairKey key;
  std::size_t n_points = 0;
  LandmarkMetrics metrics;
};

/// Per-(scan, landmark) metrics plus their corpus mean.
struct MetricTableReport {
  std::vector<MetricRow> rows;  // sorted by key
  LandmarkMetrics means;
};

struct UncertaintyReport {
  std::vector<std::pair<FusionStrategy, MetricTableReport>> strategies;
};

struct AccuracyRow {
  FusionStrategy strategy;
  double mre_mm = 0.0;
  std::vector<double> sdr_pct;          // one per threshold
  std::vector<double> per_fold_mre_mm;  // index = fold
};

struct AccuracyReport {
  std::vector<AccuracyRow> rows;
};

struct CorrelationRow {
  FusionStrategy strategy;
  LandmarkMetrics mean_uncertainty;
  CorrelationTable vs_variability;  // binned per the metadata
  CorrelationTable vs_error;        // unbinned
};

struct CorrelationReport {
  std::vector<CorrelationRow> rows;
};

/// Shortest round-trip decimal formatting; deterministic and locale-free.
std::string fmt_double(double value);

std::string metric_table_csv(const MetricTableReport& report);
std::string metric_table_json(const MetricTableReport& report,
                              const ReportMetadata& meta);

std::string uncertainty_csv(const UncertaintyReport& report);
std::string uncertainty_json(const UncertaintyReport& report,
                             const ReportMetadata& meta);

std::string accuracy_csv(const AccuracyReport& report,
                         const std::vector<double>& thresholds_mm);
std::string accuracy_json(const AccuracyReport& report, const ReportMetadata& meta);

/// Mean uncertainty metrics per strategy next to their correlation with
/// the matching inter-rater metric.
std::string correlation_variability_csv(const CorrelationReport& report);
std::string correlation_error_csv(const CorrelationReport& report);
std::string correlation_json(const CorrelationReport& report,
                             const ReportMetadata& meta);

}  // namespace lmvar

#endif  // LMVAR_REPORT_HPP
