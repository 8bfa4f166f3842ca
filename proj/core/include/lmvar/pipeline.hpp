#ifndef LMVAR_PIPELINE_HPP
#define LMVAR_PIPELINE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lmvar/corpus.hpp"
#include "lmvar/evaluation.hpp"
#include "lmvar/fusion.hpp"
#include "lmvar/metrics.hpp"
#include "lmvar/report.hpp"
#include "lmvar/synthetic.hpp"

namespace lmvar {

/// One run's knobs; every report embeds them as metadata.
struct RunConfig {
  std::uint64_t seed = 1;
  int n_folds = 4;
  int bin_size = 5;
  BinOrder bin_order = BinOrder::index;
  MetricConfig metric_config;
  SdrThresholds thresholds;
  std::string metric_space_id = "isbi_original";
};

ReportMetadata make_metadata(const RunConfig& config);

/// Resolves the canonical metric space: a space declared by the corpus,
/// or one of the built-ins (isbi_original, isbi_downsampled).
CoordinateSpace resolve_metric_space(const std::vector<CoordinateSpace>& declared,
                                     const std::string& space_id);

struct ImportSummary {
  std::size_t n_scans = 0;
  std::size_t n_landmarks = 0;
  std::size_t n_raters = 0;
  std::size_t n_records = 0;
  std::size_t n_out_of_bounds = 0;
};

/// Imports either a directory of ISBI-style files (<rater_id>/<scan_id>.txt)
/// or an already-native JSON-lines corpus, and writes the unified corpus
/// to out_path. Re-importing an emitted corpus is byte-idempotent.
ImportSummary import_annotations(const std::string& input_path,
                                 const CoordinateSpace& isbi_space,
                                 const std::string& out_path);

/// Per-(scan, landmark) inter-rater metrics (equal-weight wcvar) plus means.
MetricTableReport variability_report(const AnnotationCorpus& corpus,
                                     const RunConfig& config);

struct StrategySamples {
  FusionStrategy strategy;
  SampleCorpus corpus;
};

UncertaintyReport uncertainty_report(const std::vector<StrategySamples>& strategies,
                                     const RunConfig& config);

/// Silver-ground-truth detection errors of the fused predictions, in mm.
std::map<PairKey, double> detection_errors_mm(const AnnotationCorpus& annotations,
                                              const SampleCorpus& samples,
                                              FusionStrategy strategy,
                                              const CoordinateSpace& metric_space);

AccuracyReport accuracy_report(const AnnotationCorpus& annotations,
                               const std::vector<StrategySamples>& strategies,
                               const RunConfig& config);

CorrelationReport correlation_report(const AnnotationCorpus& annotations,
                                     const std::vector<StrategySamples>& strategies,
                                     const RunConfig& config);

std::map<PairKey, LandmarkMetrics> as_metric_map(const MetricTableReport& report);

// Atomic file emission under out_dir; names are fixed per command.
void write_variability_outputs(const MetricTableReport& report, const RunConfig& config,
                               const std::string& out_dir);
void write_uncertainty_outputs(const UncertaintyReport& report, const RunConfig& config,
                               const std::string& out_dir);
void write_accuracy_outputs(const AccuracyReport& report, const RunConfig& config,
                            const std::string& out_dir);
void write_correlation_outputs(const CorrelationReport& report, const RunConfig& config,
                               const std::string& out_dir);

/// Scatter-plus-ellipse SVG per scan under out_dir/plots. Landmarks with
/// fewer than two points get a scatter and a warning on `warnings`.
std::vector<std::string> plot_corpus(const AnnotationCorpus& corpus,
                                     const RunConfig& config, const std::string& out_dir,
                                     std::ostream* warnings);

struct SimulateOptions {
  GeneratorSpec spec;
  int mc_samples = 20;    // per-landmark samples for the mc_dropout strategies
  int ensemble_size = 0;  // 0 means one per rater
};

struct SimulatePaths {
  std::string annotations;
  std::map<FusionStrategy, std::string> samples;
};

/// Emits annotations.jsonl plus one samples_<strategy>.jsonl per strategy.
SimulatePaths run_simulate(const SimulateOptions& options, const std::string& out_dir);

struct PipelineResult {
  MetricTableReport variability;
  UncertaintyReport uncertainty;
  AccuracyReport accuracy;
  CorrelationReport correlation;
};

/// simulate -> import back -> variability/uncertainty/accuracy/correlation
/// -> plots, everything written under out_dir. The returned reports are
/// the same objects the files were rendered from.
PipelineResult run_full_synthetic_pipeline(const SimulateOptions& options,
                                           const RunConfig& config,
                                           const std::string& out_dir);

}  // namespace lmvar

#endif  // LMVAR_PIPELINE_HPP
