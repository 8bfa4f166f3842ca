#include "lmvar/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "lmvar/errors.hpp"
#include "lmvar/random.hpp"

namespace lmvar {

namespace {

constexpr std::uint64_t kDifficultyTag = 0xD1FF1C;
constexpr std::uint64_t kAnnotationTag = 0xA0707;
constexpr std::uint64_t kPredictionTag = 0x9BED5;

struct Cholesky2 {
  double l00 = 0.0;
  double l10 = 0.0;
  double l11 = 0.0;
};

Cholesky2 cholesky2(const MatN& cov) {
  if (cov.n != 2) {
    throw DataError("synthetic covariance must be 2x2");
  }
  const double a = cov(0, 0);
  const double b = 0.5 * (cov(0, 1) + cov(1, 0));
  const double c = cov(1, 1);
  if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12 * std::max(1.0, std::abs(b))) {
    throw DataError("synthetic covariance must be symmetric");
  }
  if (!(a > 0.0)) {
    throw DataError("synthetic covariance is not positive-definite");
  }
  Cholesky2 chol;
  chol.l00 = std::sqrt(a);
  chol.l10 = b / chol.l00;
  const double rest = c - chol.l10 * chol.l10;
  if (!(rest > 0.0)) {
    throw DataError("synthetic covariance is not positive-definite");
  }
  chol.l11 = std::sqrt(rest);
  return chol;
}

std::string padded_id(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) {
    s.insert(s.begin(), '0');
  }
  return s;
}

int digits(int n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

double scan_difficulty(const GeneratorSpec& spec, int scan_index) {
  if (spec.difficulty_min == spec.difficulty_max) {
    return spec.difficulty_min;
  }
  Rng rng(mix_seed(spec.seed, mix_seed(kDifficultyTag,
                                       static_cast<std::uint64_t>(scan_index))));
  return std::exp(rng.uniform(std::log(spec.difficulty_min),
                              std::log(spec.difficulty_max)));
}

LandmarkPoint mm_to_point(double x_mm, double y_mm, const CoordinateSpace& space) {
  return LandmarkPoint{x_mm / space.mm_per_px_x, y_mm / space.mm_per_px_y, space};
}

}  // namespace

std::string to_string(ConfidenceModel m) {
  return m == ConfidenceModel::constant ? "constant" : "spread_coupled";
}

ConfidenceModel confidence_model_from_string(const std::string& s) {
  if (s == "constant") return ConfidenceModel::constant;
  if (s == "spread_coupled") return ConfidenceModel::spread_coupled;
  throw DataError("unknown confidence model '" + s + "'");
}

double StrategySpread::factor(FusionStrategy strategy) const {
  switch (strategy) {
    case FusionStrategy::averaging:
      return averaging;
    case FusionStrategy::random_sampling:
      return random_sampling;
    case FusionStrategy::deep_ensembles:
      return deep_ensembles;
  }
  throw InternalError("unhandled fusion strategy");
}

void GeneratorSpec::validate() const {
  if (n_scans < 1 || n_landmarks < 1 || n_raters < 1) {
    throw DataError("generator spec: counts must be at least 1");
  }
  if (landmarks.size() != static_cast<std::size_t>(n_landmarks)) {
    throw DataError("generator spec: need exactly one landmark model per landmark");
  }
  for (const auto& model : landmarks) {
    cholesky2(model.covariance_mm2);  // throws unless SPD
  }
  if (!(difficulty_min > 0.0) || !(difficulty_max >= difficulty_min)) {
    throw DataError("generator spec: difficulty range must satisfy 0 < min <= max");
  }
  if (!(spread.averaging > 0.0) || !(spread.random_sampling > 0.0) ||
      !(spread.deep_ensembles > 0.0)) {
    throw DataError("generator spec: spread factors must be positive");
  }
  space.validate();
}

std::vector<LandmarkModel> default_landmark_models(int n_landmarks) {
  if (n_landmarks < 1) {
    throw DataError("default landmark models: need at least one landmark");
  }
  const CoordinateSpace space = isbi_original_space();
  const double extent_x = space.width_px * space.mm_per_px_x;   // 193.5 mm
  const double extent_y = space.height_px * space.mm_per_px_y;  // 240.0 mm

  std::vector<LandmarkModel> models;
  models.reserve(static_cast<std::size_t>(n_landmarks));
  for (int i = 0; i < n_landmarks; ++i) {
    const double phase =
        2.0 * std::numbers::pi * i / static_cast<double>(n_landmarks) + 0.5;
    LandmarkModel model;
    model.center_mm = {0.5 * extent_x + 0.26 * extent_x * std::cos(phase),
                       0.5 * extent_y + 0.29 * extent_y * std::sin(phase)};

    const double t =
        n_landmarks == 1 ? 0.0 : static_cast<double>(i) / (n_landmarks - 1);
    const double sigma_major = 0.6 + 2.4 * t;
    const double sigma_minor = 0.5 * sigma_major;
    const double angle = std::numbers::pi * (0.15 + 0.8 * t);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double d0 = sigma_major * sigma_major;
    const double d1 = sigma_minor * sigma_minor;

    model.covariance_mm2.n = 2;
    model.covariance_mm2(0, 0) = c * c * d0 + s * s * d1;
    model.covariance_mm2(0, 1) = c * s * (d0 - d1);
    model.covariance_mm2(1, 0) = model.covariance_mm2(0, 1);
    model.covariance_mm2(1, 1) = s * s * d0 + c * c * d1;
    models.push_back(model);
  }
  return models;
}

AnnotationCorpus generate_annotations(const GeneratorSpec& spec) {
  spec.validate();

  AnnotationCorpus corpus;
  corpus.spaces = {spec.space};

  const int scan_width = std::max(3, digits(spec.n_scans));
  const int rater_width = std::max(2, digits(std::max(0, spec.n_raters - 1)));

  for (int s = 0; s < spec.n_scans; ++s) {
    const std::string scan_id = padded_id(s + 1, scan_width);
    const double difficulty = scan_difficulty(spec, s);
    const double amplitude = std::sqrt(difficulty);

    for (int l = 0; l < spec.n_landmarks; ++l) {
      const LandmarkModel& model = spec.landmarks[static_cast<std::size_t>(l)];
      const Cholesky2 chol = cholesky2(model.covariance_mm2);

      Rng rng(mix_seed(spec.seed,
                       mix_seed(kAnnotationTag,
                                mix_seed(static_cast<std::uint64_t>(s),
                                         static_cast<std::uint64_t>(l)))));
      std::vector<RaterAnnotation> raters;
      raters.reserve(static_cast<std::size_t>(spec.n_raters));
      for (int r = 0; r < spec.n_raters; ++r) {
        const double z0 = rng.gaussian();
        const double z1 = rng.gaussian();
        const double dx = amplitude * (chol.l00 * z0);
        const double dy = amplitude * (chol.l10 * z0 + chol.l11 * z1);
        raters.push_back(RaterAnnotation{
            "r" + padded_id(r, rater_width),
            mm_to_point(model.center_mm[0] + dx, model.center_mm[1] + dy, spec.space)});
      }
      corpus.sets.emplace_back(scan_id, l, std::move(raters));
    }
  }
  return corpus;
}

SampleCorpus generate_prediction_samples(const GeneratorSpec& spec,
                                         FusionStrategy strategy, int n_samples) {
  spec.validate();
  if (n_samples < 1) {
    throw DataError("generate_prediction_samples: need at least one sample");
  }

  const double spread_factor = spec.spread.factor(strategy);
  const Provenance provenance = strategy == FusionStrategy::deep_ensembles
                                    ? Provenance::ensemble
                                    : Provenance::mc_dropout;
  const std::uint64_t strategy_tag =
      mix_seed(kPredictionTag, static_cast<std::uint64_t>(strategy));

  SampleCorpus corpus;
  corpus.spaces = {spec.space};

  const int scan_width = std::max(3, digits(spec.n_scans));

  for (int s = 0; s < spec.n_scans; ++s) {
    const std::string scan_id = padded_id(s + 1, scan_width);
    const double difficulty = scan_difficulty(spec, s);
    const double amplitude = spread_factor * std::sqrt(difficulty);

    for (int l = 0; l < spec.n_landmarks; ++l) {
      const LandmarkModel& model = spec.landmarks[static_cast<std::size_t>(l)];
      const Cholesky2 chol = cholesky2(model.covariance_mm2);
      // Largest covariance eigenvalue scales the confidence falloff.
      const double lambda_max = sym_eigen(model.covariance_mm2).values[0];
      const double sigma_ref = amplitude * std::sqrt(lambda_max);

      Rng rng(mix_seed(spec.seed,
                       mix_seed(strategy_tag,
                                mix_seed(static_cast<std::uint64_t>(s),
                                         static_cast<std::uint64_t>(l)))));
      std::vector<Sample> samples;
      samples.reserve(static_cast<std::size_t>(n_samples));
      for (int i = 0; i < n_samples; ++i) {
        const double z0 = rng.gaussian();
        const double z1 = rng.gaussian();
        const double dx = amplitude * (chol.l00 * z0);
        const double dy = amplitude * (chol.l10 * z0 + chol.l11 * z1);

        Sample sample;
        sample.point = mm_to_point(model.center_mm[0] + dx, model.center_mm[1] + dy,
                                   spec.space);
        if (spec.confidence_model == ConfidenceModel::constant) {
          sample.heatmap_max = 1.0;
        } else {
          const double d2 = dx * dx + dy * dy;
          sample.heatmap_max = std::exp(-d2 / (2.0 * sigma_ref * sigma_ref));
        }
        samples.push_back(std::move(sample));
      }
      corpus.sets.emplace_back(scan_id, l, provenance, std::move(samples));
    }
  }
  return corpus;
}

}  // namespace lmvar
