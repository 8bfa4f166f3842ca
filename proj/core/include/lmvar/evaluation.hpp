#ifndef LMVAR_EVALUATION_HPP
#define LMVAR_EVALUATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmvar/corpus.hpp"
#include "lmvar/metrics.hpp"
#include "lmvar/space.hpp"

namespace lmvar {

struct SdrThresholds {
  std::vector<double> thresholds_mm{2.0, 2.5, 3.0, 4.0};

  void validate() const;  // strictly ascending, all positive
};

/// Seeded shuffle, then round-robin: fold sizes differ by at most one and
/// every scan lands in exactly one fold.
struct FoldSplit {
  int n_folds = 4;
  std::uint64_t seed = 0;
  std::map<std::string, int> assignments;

  std::vector<std::string> fold_members(int fold) const;
};

FoldSplit make_folds(std::vector<std::string> scan_ids, int n_folds,
                     std::uint64_t seed);

/// Per-pair Euclidean distances in mm. Each prediction must share its
/// ground truth's coordinate space.
std::vector<double> radial_errors_mm(const std::vector<LandmarkPoint>& predictions,
                                     const std::vector<LandmarkPoint>& ground_truth);

/// Mean radial error (mm).
double mre(const std::vector<LandmarkPoint>& predictions,
           const std::vector<LandmarkPoint>& ground_truth);

/// Success detection rate: percentage of errors <= threshold, per threshold.
std::vector<double> sdr(const std::vector<LandmarkPoint>& predictions,
                        const std::vector<LandmarkPoint>& ground_truth,
                        const SdrThresholds& thresholds);
std::vector<double> sdr_from_errors(const std::vector<double>& errors_mm,
                                    const SdrThresholds& thresholds);

struct PairedSeries {
  std::vector<std::pair<double, double>> pairs;
};

/// Product-moment correlation. Throws UndefinedCorrelation when either
/// series has zero variance; throws DataError for fewer than two pairs.
double pearson(const PairedSeries& series);

/// Consecutive bins of bin_size in input order; each bin contributes its
/// componentwise mean. A trailing partial bin is kept when at least half
/// full, dropped otherwise. bin_size 1 is the identity.
PairedSeries binned_series(const std::vector<double>& x, const std::vector<double>& y,
                           int bin_size);

enum class BinOrder {
  index,               // (scan, landmark) order
  sorted_by_reference  // ascending reference value before binning
};

std::string to_string(BinOrder order);
BinOrder bin_order_from_string(const std::string& s);

/// One coefficient per metric; missing when the correlation is undefined.
struct CorrelationTable {
  std::map<std::string, std::optional<double>> coefficients;
  std::size_t n_pairs = 0;
  int bin_size = 1;
  BinOrder order = BinOrder::index;
};

/// "Uncertainty vs inter-rater variability": per metric, Pearson between
/// the matching uncertainty and reference metric over aligned keys,
/// binned. Misaligned keys are a DataError listing the offenders.
CorrelationTable uncertainty_variability_correlation(
    const std::map<PairKey, LandmarkMetrics>& uncertainty,
    const std::map<PairKey, LandmarkMetrics>& reference, int bin_size,
    BinOrder order = BinOrder::index);

/// "Uncertainty vs landmark detection error": unbinned, per metric.
CorrelationTable uncertainty_error_correlation(
    const std::map<PairKey, LandmarkMetrics>& uncertainty,
    const std::map<PairKey, double>& errors_mm);

}  // namespace lmvar

#endif  // LMVAR_EVALUATION_HPP
