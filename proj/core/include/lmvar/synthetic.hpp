#ifndef LMVAR_SYNTHETIC_HPP
#define LMVAR_SYNTHETIC_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "lmvar/corpus.hpp"
#include "lmvar/fusion.hpp"
#include "lmvar/geometry.hpp"
#include "lmvar/space.hpp"

namespace lmvar {

enum class ConfidenceModel { constant, spread_coupled };

std::string to_string(ConfidenceModel m);
ConfidenceModel confidence_model_from_string(const std::string& s);

/// Ground truth for one landmark: where it truly sits and how raters
/// scatter around it.
struct LandmarkModel {
  std::array<double, 2> center_mm{};
  MatN covariance_mm2{};  // 2x2 symmetric positive-definite
};

/// How much wider or tighter each strategy's prediction cloud is,
/// relative to the rater cloud. Defaults produce the strict ordering
/// ensembles < mc-dropout < widened averaging.
struct StrategySpread {
  double averaging = 1.6;
  double random_sampling = 1.0;
  double deep_ensembles = 0.6;

  double factor(FusionStrategy strategy) const;
};

struct GeneratorSpec {
  std::uint64_t seed = 1;
  int n_scans = 1;
  int n_landmarks = 1;
  int n_raters = 1;
  std::vector<LandmarkModel> landmarks;  // one per landmark id
  ConfidenceModel confidence_model = ConfidenceModel::constant;
  // Per-scan covariance multiplier, log-uniform in [difficulty_min,
  // difficulty_max]. Shared between the rater cloud and every strategy's
  // prediction cloud of the same scan, which is what makes uncertainty
  // recover inter-rater variability in the synthetic corpus.
  double difficulty_min = 1.0;
  double difficulty_max = 1.0;
  StrategySpread spread;
  CoordinateSpace space = isbi_original_space();

  void validate() const;
};

/// Procedural landmark models: centers spread over the image, principal
/// spread growing from 0.6 mm to 3.0 mm, rotated per landmark.
std::vector<LandmarkModel> default_landmark_models(int n_landmarks);

/// Rater points drawn from the per-landmark Gaussian (Box-Muller with
/// Cholesky coloring); byte-deterministic per seed.
AnnotationCorpus generate_annotations(const GeneratorSpec& spec);

/// T prediction samples per (scan, landmark), spread per strategy, with
/// heatmap_max values per the confidence model.
SampleCorpus generate_prediction_samples(const GeneratorSpec& spec,
                                         FusionStrategy strategy, int n_samples);

}  // namespace lmvar

#endif  // LMVAR_SYNTHETIC_HPP
