#include "lmvar/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lmvar/errors.hpp"
#include "lmvar/random.hpp"

namespace lmvar {

void SdrThresholds::validate() const {
  double previous = 0.0;
  for (double t : thresholds_mm) {
    if (!(t > previous)) {
      throw DataError("SDR thresholds must be positive and strictly ascending");
    }
    previous = t;
  }
}

std::vector<std::string> FoldSplit::fold_members(int fold) const {
  std::vector<std::string> members;
  for (const auto& [scan_id, assigned] : assignments) {
    if (assigned == fold) {
      members.push_back(scan_id);
    }
  }
  return members;
}

FoldSplit make_folds(std::vector<std::string> scan_ids, int n_folds,
                     std::uint64_t seed) {
  if (n_folds < 1) {
    throw DataError("make_folds: n_folds must be at least 1");
  }
  if (static_cast<std::size_t>(n_folds) > scan_ids.size()) {
    throw DataError("make_folds: more folds (" + std::to_string(n_folds) +
                    ") than scans (" + std::to_string(scan_ids.size()) + ")");
  }
  std::sort(scan_ids.begin(), scan_ids.end());
  if (std::adjacent_find(scan_ids.begin(), scan_ids.end()) != scan_ids.end()) {
    throw DataError("make_folds: duplicate scan ids");
  }

  Rng rng(seed);
  rng.shuffle(scan_ids);

  FoldSplit split;
  split.n_folds = n_folds;
  split.seed = seed;
  for (std::size_t i = 0; i < scan_ids.size(); ++i) {
    split.assignments[scan_ids[i]] = static_cast<int>(i % static_cast<std::size_t>(n_folds));
  }
  return split;
}

std::vector<double> radial_errors_mm(const std::vector<LandmarkPoint>& predictions,
                                     const std::vector<LandmarkPoint>& ground_truth) {
  if (predictions.size() != ground_truth.size()) {
    throw DataError("radial errors: prediction and ground-truth counts differ (" +
                    std::to_string(predictions.size()) + " vs " +
                    std::to_string(ground_truth.size()) + ")");
  }
  if (predictions.empty()) {
    throw DataError("radial errors: need at least one pair");
  }
  std::vector<double> errors(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!(predictions[i].space == ground_truth[i].space)) {
      throw DataError("radial errors: pair " + std::to_string(i) +
                      " mixes coordinate spaces; convert first");
    }
    errors[i] = distance_mm(to_mm(predictions[i]), to_mm(ground_truth[i]));
  }
  return errors;
}

double mre(const std::vector<LandmarkPoint>& predictions,
           const std::vector<LandmarkPoint>& ground_truth) {
  const std::vector<double> errors = radial_errors_mm(predictions, ground_truth);
  return std::accumulate(errors.begin(), errors.end(), 0.0) /
         static_cast<double>(errors.size());
}

std::vector<double> sdr_from_errors(const std::vector<double>& errors_mm,
                                    const SdrThresholds& thresholds) {
  thresholds.validate();
  if (errors_mm.empty()) {
    throw DataError("sdr: need at least one error");
  }
  std::vector<double> rates;
  rates.reserve(thresholds.thresholds_mm.size());
  for (double threshold : thresholds.thresholds_mm) {
    std::size_t hits = 0;
    for (double e : errors_mm) {
      if (e <= threshold) {
        ++hits;
      }
    }
    rates.push_back(100.0 * static_cast<double>(hits) /
                    static_cast<double>(errors_mm.size()));
  }
  return rates;
}

std::vector<double> sdr(const std::vector<LandmarkPoint>& predictions,
                        const std::vector<LandmarkPoint>& ground_truth,
                        const SdrThresholds& thresholds) {
  return sdr_from_errors(radial_errors_mm(predictions, ground_truth), thresholds);
}

double pearson(const PairedSeries& series) {
  const std::size_t n = series.pairs.size();
  if (n < 2) {
    throw DataError("pearson: need at least two pairs");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [x, y] : series.pairs) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw DataError("pearson: values must be finite");
    }
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : series.pairs) {
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelation("pearson: a series has zero variance");
  }
  return sxy / std::sqrt(sxx * syy);
}

PairedSeries binned_series(const std::vector<double>& x, const std::vector<double>& y,
                           int bin_size) {
  if (x.size() != y.size()) {
    throw DataError("binned_series: series lengths differ");
  }
  if (bin_size < 1) {
    throw DataError("binned_series: bin_size must be at least 1");
  }
  PairedSeries out;
  const std::size_t size = static_cast<std::size_t>(bin_size);
  for (std::size_t start = 0; start < x.size(); start += size) {
    const std::size_t count = std::min(size, x.size() - start);
    if (count < size && count * 2 < size) {
      break;  // trailing bin under half full: dropped
    }
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (std::size_t i = start; i < start + count; ++i) {
      sum_x += x[i];
      sum_y += y[i];
    }
    out.pairs.emplace_back(sum_x / static_cast<double>(count),
                           sum_y / static_cast<double>(count));
  }
  return out;
}

std::string to_string(BinOrder order) {
  return order == BinOrder::index ? "index" : "sorted_by_reference";
}

BinOrder bin_order_from_string(const std::string& s) {
  if (s == "index") return BinOrder::index;
  if (s == "sorted_by_reference" || s == "sorted") return BinOrder::sorted_by_reference;
  throw DataError("unknown bin order '" + s + "'");
}

namespace {

template <typename T>
void require_aligned_keys(const std::map<PairKey, LandmarkMetrics>& uncertainty,
                          const std::map<PairKey, T>& reference) {
  std::vector<std::string> missing;
  for (const auto& [key, value] : uncertainty) {
    if (!reference.contains(key)) {
      missing.push_back(to_string(key) + " (no reference)");
    }
  }
  for (const auto& [key, value] : reference) {
    if (!uncertainty.contains(key)) {
      missing.push_back(to_string(key) + " (no uncertainty)");
    }
  }
  if (!missing.empty()) {
    std::string list;
    const std::size_t shown = std::min<std::size_t>(missing.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
      list += (i ? ", " : "") + missing[i];
    }
    if (missing.size() > shown) {
      list += ", ... (" + std::to_string(missing.size() - shown) + " more)";
    }
    throw DataError("misaligned (scan, landmark) keys: " + list);
  }
}

std::optional<double> try_pearson(const PairedSeries& series) {
  try {
    return pearson(series);
  } catch (const UndefinedCorrelation&) {
    return std::nullopt;
  }
}

}  // namespace

CorrelationTable uncertainty_variability_correlation(
    const std::map<PairKey, LandmarkMetrics>& uncertainty,
    const std::map<PairKey, LandmarkMetrics>& reference, int bin_size, BinOrder order) {
  require_aligned_keys(uncertainty, reference);

  CorrelationTable table;
  table.n_pairs = uncertainty.size();
  table.bin_size = bin_size;
  table.order = order;

  for (const std::string& name : metric_names()) {
    std::vector<double> ref_values;
    std::vector<double> unc_values;
    ref_values.reserve(uncertainty.size());
    unc_values.reserve(uncertainty.size());
    for (const auto& [key, unc] : uncertainty) {
      ref_values.push_back(metric_value(reference.at(key), name));
      unc_values.push_back(metric_value(unc, name));
    }
    if (order == BinOrder::sorted_by_reference) {
      std::vector<std::size_t> idx(ref_values.size());
      std::iota(idx.begin(), idx.end(), 0u);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return ref_values[a] < ref_values[b];
      });
      std::vector<double> ref_sorted(ref_values.size());
      std::vector<double> unc_sorted(unc_values.size());
      for (std::size_t i = 0; i < idx.size(); ++i) {
        ref_sorted[i] = ref_values[idx[i]];
        unc_sorted[i] = unc_values[idx[i]];
      }
      ref_values = std::move(ref_sorted);
      unc_values = std::move(unc_sorted);
    }
    table.coefficients[name] =
        try_pearson(binned_series(ref_values, unc_values, bin_size));
  }
  return table;
}

CorrelationTable uncertainty_error_correlation(
    const std::map<PairKey, LandmarkMetrics>& uncertainty,
    const std::map<PairKey, double>& errors_mm) {
  require_aligned_keys(uncertainty, errors_mm);

  CorrelationTable table;
  table.n_pairs = uncertainty.size();
  table.bin_size = 1;
  table.order = BinOrder::index;

  for (const std::string& name : metric_names()) {
    PairedSeries series;
    series.pairs.reserve(uncertainty.size());
    for (const auto& [key, unc] : uncertainty) {
      series.pairs.emplace_back(errors_mm.at(key), metric_value(unc, name));
    }
    table.coefficients[name] = try_pearson(series);
  }
  return table;
}

}  // namespace lmvar
