#ifndef LMVAR_FUSION_HPP
#define LMVAR_FUSION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lmvar/annotation.hpp"
#include "lmvar/corpus.hpp"
#include "lmvar/random.hpp"
#include "lmvar/space.hpp"

namespace lmvar {

enum class FusionStrategy { averaging, random_sampling, deep_ensembles };

std::string to_string(FusionStrategy s);
FusionStrategy strategy_from_string(const std::string& s);
const std::vector<FusionStrategy>& all_strategies();

/// Spatial average of all raters' marks: the silver ground truth.
LandmarkPoint average_annotations(const AnnotationSet& set);

/// Reproducible stream of rater indices in [0, n_raters), uniform per
/// draw. The first k draws never depend on how many draws follow.
class SamplingSchedule {
 public:
  SamplingSchedule(std::uint64_t seed, int n_raters);

  int next();
  std::uint64_t seed() const { return seed_; }
  int n_raters() const { return n_raters_; }

 private:
  std::uint64_t seed_;
  int n_raters_;
  Rng rng_;
};

std::vector<int> sampling_schedule(std::uint64_t seed, int n_raters,
                                   std::size_t n_draws);

/// Mean of the per-model predictions; requires ensemble provenance.
LandmarkPoint aggregate_ensemble(const SampleSet& samples);

/// The single evaluated prediction per landmark: the coordinate mean of
/// the sample set. Provenance must match the strategy (mc_dropout for
/// averaging/random_sampling, ensemble for deep_ensembles).
LandmarkPoint fused_prediction(FusionStrategy strategy, const SampleSet& samples);

/// One rater pick per (iteration, scan, landmark), for trainer consumption.
struct ScheduleRecord {
  std::int64_t iteration = 0;
  std::string scan_id;
  int landmark_id = 0;
  std::string rater_id;
};

std::vector<ScheduleRecord> make_training_schedule(const AnnotationCorpus& corpus,
                                                   int n_iterations,
                                                   std::uint64_t seed);

void write_schedule_jsonl(std::ostream& out, const std::vector<ScheduleRecord>& records);

}  // namespace lmvar

#endif  // LMVAR_FUSION_HPP
