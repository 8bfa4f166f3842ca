#include "lmvar/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lmvar/errors.hpp"

namespace lmvar {

namespace {

using nlohmann::json;

constexpr const char* kAnnotationFormat = "lmvar-annotations";
constexpr const char* kSampleFormat = "lmvar-samples";

json space_to_json(const CoordinateSpace& space) {
  return json{{"space_id", space.space_id},
              {"width_px", space.width_px},
              {"height_px", space.height_px},
              {"mm_per_px_x", space.mm_per_px_x},
              {"mm_per_px_y", space.mm_per_px_y}};
}

CoordinateSpace space_from_json(const json& j) {
  CoordinateSpace space;
  space.space_id = j.at("space_id").get<std::string>();
  space.width_px = j.at("width_px").get<int>();
  space.height_px = j.at("height_px").get<int>();
  space.mm_per_px_x = j.at("mm_per_px_x").get<double>();
  space.mm_per_px_y = j.at("mm_per_px_y").get<double>();
  space.validate();
  return space;
}

json parse_line(const std::string& line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON record: ") + e.what(), line_no);
  }
}

std::vector<CoordinateSpace> read_header(std::istream& in, const char* expected_format,
                                         std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty file");
  }
  line_no = 1;
  const json header = parse_line(line, line_no);
  if (header.value("type", "") != "header") {
    throw ParseError("first record must be the header", line_no);
  }
  if (header.value("format", "") != expected_format) {
    throw ParseError("expected format '" + std::string(expected_format) + "', got '" +
                         header.value("format", "") + "'",
                     line_no);
  }
  std::vector<CoordinateSpace> spaces;
  std::set<std::string> seen;
  for (const json& js : header.at("spaces")) {
    CoordinateSpace space = space_from_json(js);
    if (!seen.insert(space.space_id).second) {
      throw ParseError("duplicate space_id '" + space.space_id + "' in header", line_no);
    }
    spaces.push_back(std::move(space));
  }
  if (spaces.empty()) {
    throw ParseError("header declares no coordinate spaces", line_no);
  }
  return spaces;
}

const CoordinateSpace& lookup_space(const std::vector<CoordinateSpace>& spaces,
                                    const std::string& space_id, std::size_t line_no) {
  for (const auto& space : spaces) {
    if (space.space_id == space_id) {
      return space;
    }
  }
  throw ParseError("space_id '" + space_id + "' is not declared in the header", line_no);
}

void write_header(std::ostream& out, const char* format,
                  std::vector<CoordinateSpace> spaces) {
  std::sort(spaces.begin(), spaces.end(),
            [](const CoordinateSpace& a, const CoordinateSpace& b) {
              return a.space_id < b.space_id;
            });
  json header{{"type", "header"}, {"format", format}, {"version", 1}};
  json js = json::array();
  for (const auto& space : spaces) {
    js.push_back(space_to_json(space));
  }
  header["spaces"] = js;
  out << header.dump() << '\n';
}

}  // namespace

std::string to_string(const PairKey& key) {
  return key.scan_id + "/" + std::to_string(key.landmark_id);
}

const CoordinateSpace& AnnotationCorpus::space_by_id(const std::string& space_id) const {
  for (const auto& space : spaces) {
    if (space.space_id == space_id) {
      return space;
    }
  }
  throw DataError("corpus declares no space '" + space_id + "'");
}

const AnnotationSet* AnnotationCorpus::find(const PairKey& key) const {
  const auto it = std::lower_bound(
      sets.begin(), sets.end(), key, [](const AnnotationSet& set, const PairKey& k) {
        return PairKey{set.scan_id(), set.landmark_id()} < k;
      });
  if (it == sets.end() || it->scan_id() != key.scan_id ||
      it->landmark_id() != key.landmark_id) {
    return nullptr;
  }
  return &*it;
}

std::vector<std::string> AnnotationCorpus::scan_ids() const {
  std::set<std::string> ids;
  for (const auto& set : sets) {
    ids.insert(set.scan_id());
  }
  return {ids.begin(), ids.end()};
}

std::vector<int> AnnotationCorpus::landmark_ids() const {
  std::set<int> ids;
  for (const auto& set : sets) {
    ids.insert(set.landmark_id());
  }
  return {ids.begin(), ids.end()};
}

std::vector<std::string> AnnotationCorpus::rater_ids() const {
  std::set<std::string> ids;
  for (const auto& set : sets) {
    for (const auto& [rater_id, point] : set.rater_points()) {
      ids.insert(rater_id);
    }
  }
  return {ids.begin(), ids.end()};
}

const SampleSet* SampleCorpus::find(const PairKey& key) const {
  const auto it = std::lower_bound(
      sets.begin(), sets.end(), key, [](const SampleSet& set, const PairKey& k) {
        return PairKey{set.scan_id(), set.landmark_id()} < k;
      });
  if (it == sets.end() || it->scan_id() != key.scan_id ||
      it->landmark_id() != key.landmark_id) {
    return nullptr;
  }
  return &*it;
}

AnnotationCorpus read_annotation_corpus(std::istream& in) {
  std::size_t line_no = 0;
  AnnotationCorpus corpus;
  corpus.spaces = read_header(in, kAnnotationFormat, line_no);

  std::map<PairKey, std::vector<RaterAnnotation>> grouped;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const json record = parse_line(line, line_no);
    try {
      const PairKey key{record.at("scan_id").get<std::string>(),
                        record.at("landmark_id").get<int>()};
      const CoordinateSpace& space =
          lookup_space(corpus.spaces, record.at("space_id").get<std::string>(), line_no);
      grouped[key].push_back(
          RaterAnnotation{record.at("rater_id").get<std::string>(),
                          LandmarkPoint{record.at("x").get<double>(),
                                        record.at("y").get<double>(), space}});
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad annotation record: ") + e.what(), line_no);
    }
  }
  if (grouped.empty()) {
    throw DataError("corpus contains no annotation records");
  }
  for (auto& [key, raters] : grouped) {
    corpus.sets.emplace_back(key.scan_id, key.landmark_id, std::move(raters));
  }
  return corpus;
}

AnnotationCorpus read_annotation_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open annotation corpus '" + path + "'");
  }
  return read_annotation_corpus(in);
}

void write_annotation_corpus(std::ostream& out, const AnnotationCorpus& corpus) {
  write_header(out, kAnnotationFormat, corpus.spaces);
  for (const auto& set : corpus.sets) {
    for (const auto& [rater_id, point] : set.rater_points()) {
      const json record{{"scan_id", set.scan_id()},
                        {"landmark_id", set.landmark_id()},
                        {"rater_id", rater_id},
                        {"x", point.x},
                        {"y", point.y},
                        {"space_id", point.space.space_id}};
      out << record.dump() << '\n';
    }
  }
}

SampleCorpus read_sample_corpus(std::istream& in) {
  std::size_t line_no = 0;
  SampleCorpus corpus;
  corpus.spaces = read_header(in, kSampleFormat, line_no);

  std::map<PairKey, SampleSet> grouped;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const json record = parse_line(line, line_no);
    try {
      const PairKey key{record.at("scan_id").get<std::string>(),
                        record.at("landmark_id").get<int>()};
      const CoordinateSpace& space =
          record.contains("space_id")
              ? lookup_space(corpus.spaces, record.at("space_id").get<std::string>(),
                             line_no)
              : corpus.spaces.front();
      std::vector<Sample> samples;
      for (const json& js : record.at("samples")) {
        Sample sample;
        sample.point =
            LandmarkPoint{js.at("x").get<double>(), js.at("y").get<double>(), space};
        if (js.contains("heatmap_max")) {
          sample.heatmap_max = js.at("heatmap_max").get<double>();
        }
        samples.push_back(std::move(sample));
      }
      SampleSet set(key.scan_id, key.landmark_id,
                    provenance_from_string(record.at("provenance").get<std::string>()),
                    std::move(samples));
      if (!grouped.emplace(key, std::move(set)).second) {
        throw DataError("duplicate sample record for " + to_string(key));
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad sample record: ") + e.what(), line_no);
    }
  }
  if (grouped.empty()) {
    throw DataError("corpus contains no sample records");
  }
  for (auto& [key, set] : grouped) {
    corpus.sets.push_back(std::move(set));
  }
  return corpus;
}

SampleCorpus read_sample_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open sample corpus '" + path + "'");
  }
  return read_sample_corpus(in);
}

void write_sample_corpus(std::ostream& out, const SampleCorpus& corpus) {
  write_header(out, kSampleFormat, corpus.spaces);
  for (const auto& set : corpus.sets) {
    json samples = json::array();
    for (const auto& sample : set.samples()) {
      json js{{"x", sample.point.x}, {"y", sample.point.y}};
      if (sample.heatmap_max) {
        js["heatmap_max"] = *sample.heatmap_max;
      }
      samples.push_back(std::move(js));
    }
    const json record{{"scan_id", set.scan_id()},
                      {"landmark_id", set.landmark_id()},
                      {"provenance", to_string(set.provenance())},
                      {"samples", samples}};
    out << record.dump() << '\n';
  }
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw DataError("cannot write '" + tmp.string() + "'");
    }
    out << content;
    if (!out.flush()) {
      throw DataError("short write to '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
}

}  // namespace lmvar
