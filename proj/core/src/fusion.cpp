#include "lmvar/fusion.hpp"

#include <ostream>

#include <json.hpp>

#include "lmvar/errors.hpp"

namespace lmvar {

std::string to_string(FusionStrategy s) {
  switch (s) {
    case FusionStrategy::averaging:
      return "averaging";
    case FusionStrategy::random_sampling:
      return "random_sampling";
    case FusionStrategy::deep_ensembles:
      return "deep_ensembles";
  }
  throw InternalError("unhandled fusion strategy");
}

FusionStrategy strategy_from_string(const std::string& s) {
  if (s == "averaging") return FusionStrategy::averaging;
  if (s == "random_sampling") return FusionStrategy::random_sampling;
  if (s == "deep_ensembles") return FusionStrategy::deep_ensembles;
  throw DataError("unknown fusion strategy '" + s + "'");
}

const std::vector<FusionStrategy>& all_strategies() {
  static const std::vector<FusionStrategy> strategies{
      FusionStrategy::averaging, FusionStrategy::random_sampling,
      FusionStrategy::deep_ensembles};
  return strategies;
}

namespace {

LandmarkPoint mean_point(const std::vector<Sample>& samples) {
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& sample : samples) {
    sx += sample.point.x;
    sy += sample.point.y;
  }
  const double count = static_cast<double>(samples.size());
  return LandmarkPoint{sx / count, sy / count, samples.front().point.space};
}

}  // namespace

LandmarkPoint average_annotations(const AnnotationSet& set) {
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [rater_id, point] : set.rater_points()) {
    sx += point.x;
    sy += point.y;
  }
  const double count = static_cast<double>(set.n_raters());
  return LandmarkPoint{sx / count, sy / count, set.space()};
}

SamplingSchedule::SamplingSchedule(std::uint64_t seed, int n_raters)
    : seed_(seed), n_raters_(n_raters), rng_(seed) {
  if (n_raters_ < 1) {
    throw DataError("sampling schedule: n_raters must be at least 1");
  }
}

int SamplingSchedule::next() {
  return static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_raters_)));
}

std::vector<int> sampling_schedule(std::uint64_t seed, int n_raters,
                                   std::size_t n_draws) {
  SamplingSchedule schedule(seed, n_raters);
  std::vector<int> draws(n_draws);
  for (auto& draw : draws) {
    draw = schedule.next();
  }
  return draws;
}

LandmarkPoint aggregate_ensemble(const SampleSet& samples) {
  if (samples.provenance() != Provenance::ensemble) {
    throw DataError("aggregate_ensemble: sample set " + samples.scan_id() + "/" +
                    std::to_string(samples.landmark_id()) + " has provenance '" +
                    to_string(samples.provenance()) + "', expected 'ensemble'");
  }
  return mean_point(samples.samples());
}

LandmarkPoint fused_prediction(FusionStrategy strategy, const SampleSet& samples) {
  const Provenance expected = strategy == FusionStrategy::deep_ensembles
                                  ? Provenance::ensemble
                                  : Provenance::mc_dropout;
  if (samples.provenance() != expected) {
    throw DataError("fused_prediction: strategy '" + to_string(strategy) +
                    "' expects provenance '" + to_string(expected) + "', sample set " +
                    samples.scan_id() + "/" + std::to_string(samples.landmark_id()) +
                    " has '" + to_string(samples.provenance()) + "'");
  }
  return mean_point(samples.samples());
}

std::vector<ScheduleRecord> make_training_schedule(const AnnotationCorpus& corpus,
                                                   int n_iterations,
                                                   std::uint64_t seed) {
  if (n_iterations < 1) {
    throw DataError("training schedule: n_iterations must be at least 1");
  }
  std::vector<ScheduleRecord> records;
  records.reserve(static_cast<std::size_t>(n_iterations) * corpus.sets.size());
  // One stream per (scan, landmark) keeps the draws independent of corpus
  // iteration order and of the number of other landmarks.
  for (const auto& set : corpus.sets) {
    const std::uint64_t sub_seed =
        mix_seed(seed, mix_seed(fnv1a64(set.scan_id()),
                                static_cast<std::uint64_t>(set.landmark_id())));
    SamplingSchedule schedule(sub_seed, static_cast<int>(set.n_raters()));
    for (int it = 0; it < n_iterations; ++it) {
      const int rater_index = schedule.next();
      records.push_back(ScheduleRecord{
          it, set.scan_id(), set.landmark_id(),
          set.rater_points()[static_cast<std::size_t>(rater_index)].rater_id});
    }
  }
  // Trainer-friendly ordering: by iteration, then (scan, landmark).
  std::stable_sort(records.begin(), records.end(),
                   [](const ScheduleRecord& a, const ScheduleRecord& b) {
                     return a.iteration < b.iteration;
                   });
  return records;
}

void write_schedule_jsonl(std::ostream& out, const std::vector<ScheduleRecord>& records) {
  for (const auto& record : records) {
    const nlohmann::json js{{"iteration", record.iteration},
                            {"scan_id", record.scan_id},
                            {"landmark_id", record.landmark_id},
                            {"rater_id", record.rater_id}};
    out << js.dump() << '\n';
  }
}

}  // namespace lmvar
