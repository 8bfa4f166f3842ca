#include "lmvar/annotation.hpp"

#include <set>
#include <utility>

#include "lmvar/errors.hpp"

namespace lmvar {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::raters:
      return "raters";
    case Provenance::mc_dropout:
      return "mc_dropout";
    case Provenance::ensemble:
      return "ensemble";
  }
  throw InternalError("unhandled provenance value");
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "raters") return Provenance::raters;
  if (s == "mc_dropout") return Provenance::mc_dropout;
  if (s == "ensemble") return Provenance::ensemble;
  throw DataError("unknown provenance '" + s + "'");
}

AnnotationSet::AnnotationSet(std::string scan_id, int landmark_id,
                             std::vector<RaterAnnotation> rater_points)
    : scan_id_(std::move(scan_id)),
      landmark_id_(landmark_id),
      rater_points_(std::move(rater_points)) {
  const std::string where = "annotation set " + scan_id_ + "/" + std::to_string(landmark_id_);
  if (landmark_id_ < 0) {
    throw DataError(where + ": landmark_id must be non-negative");
  }
  if (rater_points_.empty()) {
    throw DataError(where + ": needs at least one rater");
  }
  std::set<std::string> seen;
  const CoordinateSpace& space = rater_points_.front().point.space;
  for (const auto& [rater_id, point] : rater_points_) {
    if (!seen.insert(rater_id).second) {
      throw DataError(where + ": duplicate rater '" + rater_id + "'");
    }
    require_finite(point, where + " rater '" + rater_id + "'");
    if (!(point.space == space)) {
      throw DataError(where + ": all points must share one coordinate space");
    }
  }
}

SampleSet::SampleSet(std::string scan_id, int landmark_id, Provenance provenance,
                     std::vector<Sample> samples)
    : scan_id_(std::move(scan_id)),
      landmark_id_(landmark_id),
      provenance_(provenance),
      samples_(std::move(samples)) {
  const std::string where = "sample set " + scan_id_ + "/" + std::to_string(landmark_id_);
  if (landmark_id_ < 0) {
    throw DataError(where + ": landmark_id must be non-negative");
  }
  if (samples_.empty()) {
    throw DataError(where + ": needs at least one sample");
  }
  const bool with_confidence = samples_.front().heatmap_max.has_value();
  const CoordinateSpace& space = samples_.front().point.space;
  for (const auto& sample : samples_) {
    require_finite(sample.point, where);
    if (sample.heatmap_max.has_value() != with_confidence) {
      throw DataError(where + ": heatmap_max must be present on all samples or none");
    }
    if (sample.heatmap_max && *sample.heatmap_max < 0.0) {
      throw DataError(where + ": heatmap_max must be non-negative");
    }
    if (!(sample.point.space == space)) {
      throw DataError(where + ": all samples must share one coordinate space");
    }
  }
}

std::vector<LandmarkDefinition> make_landmark_definitions(int n_landmarks) {
  if (n_landmarks < 1) {
    throw DataError("landmark definitions: need at least one landmark");
  }
  std::vector<LandmarkDefinition> defs;
  defs.reserve(static_cast<std::size_t>(n_landmarks));
  for (int i = 0; i < n_landmarks; ++i) {
    defs.push_back({i, "landmark_" + std::to_string(i)});
  }
  return defs;
}

}  // namespace lmvar
