#ifndef LMVAR_CORPUS_HPP
#define LMVAR_CORPUS_HPP

#include <compare>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lmvar/annotation.hpp"
#include "lmvar/space.hpp"

namespace lmvar {

/// (scan, landmark) key used to align annotations, samples, and errors.
struct PairKey {
  std::string scan_id;
  int landmark_id = 0;

  auto operator<=>(const PairKey&) const = default;
};

std::string to_string(const PairKey& key);

/// A multi-rater annotation corpus: declared coordinate spaces plus one
/// AnnotationSet per (scan, landmark), ordered by that key.
struct AnnotationCorpus {
  std::vector<CoordinateSpace> spaces;
  std::vector<AnnotationSet> sets;

  const CoordinateSpace& space_by_id(const std::string& space_id) const;
  const AnnotationSet* find(const PairKey& key) const;
  std::vector<std::string> scan_ids() const;
  std::vector<int> landmark_ids() const;
  std::vector<std::string> rater_ids() const;
};

/// Prediction samples grouped the same way.
struct SampleCorpus {
  std::vector<CoordinateSpace> spaces;
  std::vector<SampleSet> sets;

  const SampleSet* find(const PairKey& key) const;
};

// JSON-lines formats. The first record is a header declaring the spaces;
// every following line is one record:
//   annotations: {"scan_id", "landmark_id", "rater_id", "x", "y", "space_id"}
//   samples:     {"scan_id", "landmark_id", "provenance",
//                 "samples": [{"x", "y", "heatmap_max"?}]}
// Sample records bind to the header's first space unless they carry an
// explicit "space_id".
AnnotationCorpus read_annotation_corpus(std::istream& in);
AnnotationCorpus read_annotation_corpus_file(const std::string& path);
void write_annotation_corpus(std::ostream& out, const AnnotationCorpus& corpus);

SampleCorpus read_sample_corpus(std::istream& in);
SampleCorpus read_sample_corpus_file(const std::string& path);
void write_sample_corpus(std::ostream& out, const SampleCorpus& corpus);

/// Writes content to path via a sibling temp file and an atomic rename.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace lmvar

#endif  // LMVAR_CORPUS_HPP
