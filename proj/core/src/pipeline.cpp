#include "lmvar/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "lmvar/errors.hpp"
#include "lmvar/parse.hpp"
#include "lmvar/svg.hpp"

namespace lmvar {

namespace fs = std::filesystem;

namespace {

void require_matching_keys(const AnnotationCorpus& annotations,
                           const SampleCorpus& samples, FusionStrategy strategy) {
  std::set<PairKey> annotation_keys;
  for (const auto& set : annotations.sets) {
    annotation_keys.insert(PairKey{set.scan_id(), set.landmark_id()});
  }
  std::set<PairKey> sample_keys;
  for (const auto& set : samples.sets) {
    sample_keys.insert(PairKey{set.scan_id(), set.landmark_id()});
  }
  std::vector<std::string> problems;
  for (const auto& key : annotation_keys) {
    if (!sample_keys.contains(key)) {
      problems.push_back(to_string(key) + " (no samples)");
    }
  }
  for (const auto& key : sample_keys) {
    if (!annotation_keys.contains(key)) {
      problems.push_back(to_string(key) + " (no annotations)");
    }
  }
  if (!problems.empty()) {
    std::string list;
    const std::size_t shown = std::min<std::size_t>(problems.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
      list += (i ? ", " : "") + problems[i];
    }
    if (problems.size() > shown) {
      list += ", ... (" + std::to_string(problems.size() - shown) + " more)";
    }
    throw DataError("strategy '" + to_string(strategy) +
                    "': sample/annotation keys misaligned: " + list);
  }
}

std::string render_corpus(const AnnotationCorpus& corpus) {
  std::ostringstream out;
  write_annotation_corpus(out, corpus);
  return out.str();
}

std::string render_samples(const SampleCorpus& corpus) {
  std::ostringstream out;
  write_sample_corpus(out, corpus);
  return out.str();
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

}  // namespace

ReportMetadata make_metadata(const RunConfig& config) {
  ReportMetadata meta;
  meta.seed = config.seed;
  meta.n_folds = config.n_folds;
  meta.bin_size = config.bin_size;
  meta.bin_order = to_string(config.bin_order);
  meta.epsilon_aniso = config.metric_config.epsilon_aniso;
  meta.epsilon_wcvar = config.metric_config.epsilon_wcvar;
  meta.metric_space_id = config.metric_space_id;
  meta.sdr_thresholds_mm = config.thresholds.thresholds_mm;
  return meta;
}

CoordinateSpace resolve_metric_space(const std::vector<CoordinateSpace>& declared,
                                     const std::string& space_id) {
  for (const auto& space : declared) {
    if (space.space_id == space_id) {
      return space;
    }
  }
  if (space_id == "isbi_original") {
    return isbi_original_space();
  }
  if (space_id == "isbi_downsampled") {
    return isbi_downsampled_space();
  }
  throw DataError("metric space '" + space_id +
                  "' is neither declared by the corpus nor a built-in");
}

ImportSummary import_annotations(const std::string& input_path,
                                 const CoordinateSpace& isbi_space,
                                 const std::string& out_path) {
  AnnotationCorpus corpus;

  if (fs::is_directory(input_path)) {
    isbi_space.validate();
    std::vector<std::string> rater_dirs;
    for (const auto& entry : fs::directory_iterator(input_path)) {
      if (entry.is_directory()) {
        rater_dirs.push_back(entry.path().filename().string());
      }
    }
    std::sort(rater_dirs.begin(), rater_dirs.end());
    if (rater_dirs.empty()) {
      throw DataError("import: no rater subdirectories under '" + input_path + "'");
    }

    std::vector<std::string> scan_ids;
    for (const auto& entry :
         fs::directory_iterator(fs::path(input_path) / rater_dirs.front())) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        scan_ids.push_back(entry.path().stem().string());
      }
    }
    std::sort(scan_ids.begin(), scan_ids.end());
    if (scan_ids.empty()) {
      throw DataError("import: rater '" + rater_dirs.front() + "' has no .txt files");
    }

    // scan -> landmark -> per-rater points, raters in sorted order
    std::size_t n_landmarks = 0;
    std::map<std::string, std::vector<std::vector<RaterAnnotation>>> per_scan;
    for (const auto& rater_id : rater_dirs) {
      for (const auto& scan_id : scan_ids) {
        const fs::path file = fs::path(input_path) / rater_id / (scan_id + ".txt");
        std::ifstream in(file);
        if (!in) {
          throw DataError("import: missing annotation file '" + file.string() + "'");
        }
        std::vector<LandmarkPoint> points;
        try {
          points = parse_isbi_annotation_file(in, isbi_space, rater_id);
        } catch (const ParseError& e) {
          throw ParseError("'" + file.string() + "': " + e.what());
        }
        if (n_landmarks == 0) {
          n_landmarks = points.size();
        } else if (points.size() != n_landmarks) {
          throw DataError("import: '" + file.string() + "' has " +
                          std::to_string(points.size()) + " landmarks, expected " +
                          std::to_string(n_landmarks));
        }
        auto& rows = per_scan[scan_id];
        rows.resize(n_landmarks);
        for (std::size_t l = 0; l < points.size(); ++l) {
          rows[l].push_back(RaterAnnotation{rater_id, points[l]});
        }
      }
    }

    corpus.spaces = {isbi_space};
    for (auto& [scan_id, rows] : per_scan) {
      for (std::size_t l = 0; l < rows.size(); ++l) {
        corpus.sets.emplace_back(scan_id, static_cast<int>(l), std::move(rows[l]));
      }
    }
  } else if (fs::is_regular_file(input_path)) {
    corpus = read_annotation_corpus_file(input_path);
  } else {
    throw DataError("import: '" + input_path + "' is neither a directory nor a file");
  }

  ImportSummary summary;
  summary.n_scans = corpus.scan_ids().size();
  summary.n_landmarks = corpus.landmark_ids().size();
  summary.n_raters = corpus.rater_ids().size();
  for (const auto& set : corpus.sets) {
    for (const auto& [rater_id, point] : set.rater_points()) {
      ++summary.n_records;
      if (!in_bounds(point)) {
        ++summary.n_out_of_bounds;
      }
    }
  }

  atomic_write_file(out_path, render_corpus(corpus));
  return summary;
}

MetricTableReport variability_report(const AnnotationCorpus& corpus,
                                     const RunConfig& config) {
  const CoordinateSpace metric_space =
      resolve_metric_space(corpus.spaces, config.metric_space_id);

  MetricTableReport report;
  std::vector<LandmarkMetrics> all;
  for (const auto& set : corpus.sets) {
    const PointCloud cloud = annotation_cloud_mm(set, metric_space);
    // Equal weights: every rater counts the same, so wcvar collapses to cvar.
    const LandmarkMetrics metrics = compute_metrics(cloud, {}, config.metric_config);
    report.rows.push_back(
        MetricRow{PairKey{set.scan_id(), set.landmark_id()}, set.n_raters(), metrics});
    all.push_back(metrics);
  }
  report.means = mean_metrics(all);
  return report;
}

UncertaintyReport uncertainty_report(const std::vector<StrategySamples>& strategies,
                                     const RunConfig& config) {
  UncertaintyReport report;
  for (const auto& [strategy, corpus] : strategies) {
    const CoordinateSpace metric_space =
        resolve_metric_space(corpus.spaces, config.metric_space_id);
    MetricTableReport table;
    std::vector<LandmarkMetrics> all;
    for (const auto& set : corpus.sets) {
      const PointCloud cloud = sample_cloud_mm(set, metric_space);
      const std::vector<double> confidence = heatmap_max_values(set);
      const LandmarkMetrics metrics =
          compute_metrics(cloud, confidence, config.metric_config);
      table.rows.push_back(
          MetricRow{PairKey{set.scan_id(), set.landmark_id()}, set.size(), metrics});
      all.push_back(metrics);
    }
    if (all.empty()) {
      throw DataError("uncertainty: strategy '" + to_string(strategy) +
                      "' has no sample sets");
    }
    table.means = mean_metrics(all);
    report.strategies.emplace_back(strategy, std::move(table));
  }
  return report;
}

std::map<PairKey, double> detection_errors_mm(const AnnotationCorpus& annotations,
                                              const SampleCorpus& samples,
                                              FusionStrategy strategy,
                                              const CoordinateSpace& metric_space) {
  require_matching_keys(annotations, samples, strategy);

  std::map<PairKey, double> errors;
  for (const auto& set : annotations.sets) {
    const PairKey key{set.scan_id(), set.landmark_id()};
    const SampleSet* sample_set = samples.find(key);
    const LandmarkPoint prediction =
        convert_space(fused_prediction(strategy, *sample_set), metric_space);
    const LandmarkPoint truth =
        convert_space(average_annotations(*annotations.find(key)), metric_space);
    errors[key] = distance_mm(to_mm(prediction), to_mm(truth));
  }
  return errors;
}

AccuracyReport accuracy_report(const AnnotationCorpus& annotations,
                               const std::vector<StrategySamples>& strategies,
                               const RunConfig& config) {
  config.thresholds.validate();
  const std::vector<std::string> scan_ids = annotations.scan_ids();
  const FoldSplit folds = make_folds(scan_ids, config.n_folds, config.seed);

  AccuracyReport report;
  for (const auto& [strategy, corpus] : strategies) {
    const CoordinateSpace metric_space =
        resolve_metric_space(corpus.spaces, config.metric_space_id);
    const std::map<PairKey, double> errors =
        detection_errors_mm(annotations, corpus, strategy, metric_space);

    AccuracyRow row;
    row.strategy = strategy;

    std::vector<double> pooled;
    std::vector<std::vector<double>> per_fold(static_cast<std::size_t>(config.n_folds));
    pooled.reserve(errors.size());
    for (const auto& [key, error] : errors) {
      pooled.push_back(error);
      per_fold[static_cast<std::size_t>(folds.assignments.at(key.scan_id))].push_back(
          error);
    }

    double sum = 0.0;
    for (double e : pooled) {
      sum += e;
    }
    row.mre_mm = sum / static_cast<double>(pooled.size());
    row.sdr_pct = sdr_from_errors(pooled, config.thresholds);
    for (const auto& fold_errors : per_fold) {
      double fold_sum = 0.0;
      for (double e : fold_errors) {
        fold_sum += e;
      }
      row.per_fold_mre_mm.push_back(
          fold_errors.empty() ? 0.0
                              : fold_sum / static_cast<double>(fold_errors.size()));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::map<PairKey, LandmarkMetrics> as_metric_map(const MetricTableReport& report) {
  std::map<PairKey, LandmarkMetrics> out;
  for (const auto& row : report.rows) {
    out[row.key] = row.metrics;
  }
  return out;
}

CorrelationReport correlation_report(const AnnotationCorpus& annotations,
                                     const std::vector<StrategySamples>& strategies,
                                     const RunConfig& config) {
  const std::map<PairKey, LandmarkMetrics> reference =
      as_metric_map(variability_report(annotations, config));
  const UncertaintyReport uncertainty = uncertainty_report(strategies, config);

  CorrelationReport report;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const auto& [strategy, corpus] = strategies[i];
    const CoordinateSpace metric_space =
        resolve_metric_space(corpus.spaces, config.metric_space_id);

    CorrelationRow row;
    row.strategy = strategy;
    row.mean_uncertainty = uncertainty.strategies[i].second.means;

    const std::map<PairKey, LandmarkMetrics> unc_map =
        as_metric_map(uncertainty.strategies[i].second);
    row.vs_variability = uncertainty_variability_correlation(
        unc_map, reference, config.bin_size, config.bin_order);
    row.vs_error = uncertainty_error_correlation(
        unc_map, detection_errors_mm(annotations, corpus, strategy, metric_space));
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_variability_outputs(const MetricTableReport& report, const RunConfig& config,
                               const std::string& out_dir) {
  atomic_write_file(join_path(out_dir, "variability.csv"), metric_table_csv(report));
  atomic_write_file(join_path(out_dir, "variability.json"),
                    metric_table_json(report, make_metadata(config)));
}

void write_uncertainty_outputs(const UncertaintyReport& report, const RunConfig& config,
                               const std::string& out_dir) {
  atomic_write_file(join_path(out_dir, "uncertainty.csv"), uncertainty_csv(report));
  atomic_write_file(join_path(out_dir, "uncertainty.json"),
                    uncertainty_json(report, make_metadata(config)));
}

void write_accuracy_outputs(const AccuracyReport& report, const RunConfig& config,
                            const std::string& out_dir) {
  atomic_write_file(join_path(out_dir, "accuracy.csv"),
                    accuracy_csv(report, config.thresholds.thresholds_mm));
  atomic_write_file(join_path(out_dir, "accuracy.json"),
                    accuracy_json(report, make_metadata(config)));
}

void write_correlation_outputs(const CorrelationReport& report, const RunConfig& config,
                               const std::string& out_dir) {
  atomic_write_file(join_path(out_dir, "correlation_variability.csv"),
                    correlation_variability_csv(report));
  atomic_write_file(join_path(out_dir, "correlation_error.csv"),
                    correlation_error_csv(report));
  atomic_write_file(join_path(out_dir, "correlation.json"),
                    correlation_json(report, make_metadata(config)));
}

std::vector<std::string> plot_corpus(const AnnotationCorpus& corpus,
                                     const RunConfig& config, const std::string& out_dir,
                                     std::ostream* warnings) {
  const CoordinateSpace metric_space =
      resolve_metric_space(corpus.spaces, config.metric_space_id);
  const double extent_x = metric_space.width_px * metric_space.mm_per_px_x;
  const double extent_y = metric_space.height_px * metric_space.mm_per_px_y;

  std::map<std::string, std::vector<ScatterPanel>> per_scan;
  for (const auto& set : corpus.sets) {
    const PointCloud cloud = annotation_cloud_mm(set, metric_space);

    ScatterPanel panel;
    panel.landmark_id = set.landmark_id();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      panel.points_mm.push_back(MmPoint{cloud.at(i, 0), cloud.at(i, 1)});
    }
    const CovarianceSummary summary = summarize(cloud);
    panel.centroid_mm = MmPoint{summary.mean[0], summary.mean[1]};
    if (cloud.size() >= 2) {
      panel.ellipse = ellipse_params(summary, 2.0);
    } else if (warnings) {
      *warnings << "plot: " << set.scan_id() << "/" << set.landmark_id()
                << " has fewer than 2 points; drawing scatter without ellipse\n";
    }
    per_scan[set.scan_id()].push_back(std::move(panel));
  }

  std::vector<std::string> written;
  for (const auto& [scan_id, panels] : per_scan) {
    const std::string path = join_path(out_dir, "plots/scan_" + scan_id + ".svg");
    atomic_write_file(path, render_scan_svg(scan_id, panels, extent_x, extent_y));
    written.push_back(path);
  }
  return written;
}

SimulatePaths run_simulate(const SimulateOptions& options, const std::string& out_dir) {
  SimulateOptions resolved = options;
  if (resolved.spec.landmarks.empty()) {
    resolved.spec.landmarks = default_landmark_models(resolved.spec.n_landmarks);
  }
  if (resolved.ensemble_size == 0) {
    resolved.ensemble_size = resolved.spec.n_raters;
  }
  if (resolved.mc_samples < 1 || resolved.ensemble_size < 1) {
    throw DataError("simulate: sample counts must be at least 1");
  }
  resolved.spec.validate();

  SimulatePaths paths;
  paths.annotations = join_path(out_dir, "annotations.jsonl");
  atomic_write_file(paths.annotations,
                    render_corpus(generate_annotations(resolved.spec)));

  for (FusionStrategy strategy : all_strategies()) {
    const int count = strategy == FusionStrategy::deep_ensembles
                          ? resolved.ensemble_size
                          : resolved.mc_samples;
    const SampleCorpus samples =
        generate_prediction_samples(resolved.spec, strategy, count);
    const std::string path =
        join_path(out_dir, "samples_" + to_string(strategy) + ".jsonl");
    atomic_write_file(path, render_samples(samples));
    paths.samples[strategy] = path;
  }
  return paths;
}

PipelineResult run_full_synthetic_pipeline(const SimulateOptions& options,
                                           const RunConfig& config,
                                           const std::string& out_dir) {
  const SimulatePaths paths = run_simulate(options, out_dir);

  const AnnotationCorpus annotations = read_annotation_corpus_file(paths.annotations);
  std::vector<StrategySamples> strategies;
  for (FusionStrategy strategy : all_strategies()) {
    strategies.push_back(
        StrategySamples{strategy, read_sample_corpus_file(paths.samples.at(strategy))});
  }

  PipelineResult result;
  result.variability = variability_report(annotations, config);
  result.uncertainty = uncertainty_report(strategies, config);
  result.accuracy = accuracy_report(annotations, strategies, config);
  result.correlation = correlation_report(annotations, strategies, config);

  write_variability_outputs(result.variability, config, out_dir);
  write_uncertainty_outputs(result.uncertainty, config, out_dir);
  write_accuracy_outputs(result.accuracy, config, out_dir);
  write_correlation_outputs(result.correlation, config, out_dir);
  plot_corpus(annotations, config, out_dir, nullptr);
  return result;
}

}  // namespace lmvar
