#ifndef LMVAR_ANNOTATION_HPP
#define LMVAR_ANNOTATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "lmvar/space.hpp"

namespace lmvar {

enum class Provenance { raters, mc_dropout, ensemble };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct RaterAnnotation {
  std::string rater_id;
  LandmarkPoint point;
};

/// All raters' marks for one landmark on one scan. Rater ids are unique,
/// there is at least one rater, and every point shares one space.
class AnnotationSet {
 public:
  AnnotationSet(std::string scan_id, int landmark_id,
                std::vector<RaterAnnotation> rater_points);

  const std::string& scan_id() const { return scan_id_; }
  int landmark_id() const { return landmark_id_; }
  const std::vector<RaterAnnotation>& rater_points() const { return rater_points_; }
  std::size_t n_raters() const { return rater_points_.size(); }
  const CoordinateSpace& space() const { return rater_points_.front().point.space; }

 private:
  std::string scan_id_;
  int landmark_id_ = 0;
  std::vector<RaterAnnotation> rater_points_;
};

struct Sample {
  LandmarkPoint point;
  std::optional<double> heatmap_max;
};

/// T prediction samples for one landmark on one scan. heatmap_max is
/// either present on every sample or absent on every sample.
class SampleSet {
 public:
  SampleSet(std::string scan_id, int landmark_id, Provenance provenance,
            std::vector<Sample> samples);

  const std::string& scan_id() const { return scan_id_; }
  int landmark_id() const { return landmark_id_; }
  Provenance provenance() const { return provenance_; }
  const std::vector<Sample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool has_heatmap_max() const { return samples_.front().heatmap_max.has_value(); }
  const CoordinateSpace& space() const { return samples_.front().point.space; }

 private:
  std::string scan_id_;
  int landmark_id_ = 0;
  Provenance provenance_ = Provenance::raters;
  std::vector<Sample> samples_;
};

struct LandmarkDefinition {
  int landmark_id = 0;
  std::string name;
};

/// Generic contiguous definitions ("landmark_0".."landmark_{n-1}") for
/// corpora that do not carry anatomical names.
std::vector<LandmarkDefinition> make_landmark_definitions(int n_landmarks);

}  // namespace lmvar

#endif  // LMVAR_ANNOTATION_HPP
