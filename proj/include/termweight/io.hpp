#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "termweight/classify.hpp"
#include "termweight/corpus.hpp"
#include "termweight/sparse.hpp"
#include "termweight/weighting.hpp"

namespace termweight {

/// A labelled set of document vectors as written by `ingest` and `weigh`.
///
///   #termweight-vectors<TAB>v1<TAB>raw|weighted<TAB>normalized=0|1
///   <doc id><TAB><category name><TAB><max tf><TAB><term>:<value> <term>:<value> ...
///
/// Values use 17 significant digits so files round-trip exactly.
struct VectorFile {
  bool weighted = false;
  bool normalized = false;
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<SparseVector> vectors;

  std::vector<WeightedVector> as_weighted() const;
};

void write_vector_file(std::ostream& out, const VectorFile& file);
void save_vector_file(const std::filesystem::path& path, const VectorFile& file);
VectorFile read_vector_file(std::istream& in);
VectorFile load_vector_file(const std::filesystem::path& path);

/// One term or category name per line, in id order.
void save_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);
std::vector<std::string> load_lines(const std::filesystem::path& path);

/// A trained classifier plus what is needed to apply it to a vector file.
struct StoredModel {
  ClassifierKind classifier = ClassifierKind::Knn;
  std::string scheme;
  std::vector<std::string> categories;
  /// Set for binary (one-vs-rest task) models.
  std::optional<std::string> positive;
  std::size_t dimension = 0;
  std::variant<std::monostate, KnnModel, CentroidModel, LinearSvmModel, OneVsRestSvm> model;
};

nlohmann::json model_to_json(const StoredModel& model);
StoredModel model_from_json(const nlohmann::json& j);

}  // namespace termweight
