#include "termweight/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "termweight/error.hpp"

namespace termweight {

namespace {

using nlohmann::json;

json sparse_to_json(std::span<const Entry> entries) {
  json out = json::array();
  for (const Entry& e : entries) out.push_back(json::array({e.term, e.value}));
  return out;
}

std::vector<Entry> sparse_from_json(const json& j) {
  std::vector<Entry> out;
  for (const json& pair : j) out.push_back({pair.at(0).get<TermId>(), pair.at(1).get<double>()});
  return out;
}

json dense_as_sparse(std::span<const double> dense) {
  json out = json::array();
  for (std::size_t t = 0; t < dense.size(); ++t) {
    if (dense[t] != 0.0) out.push_back(json::array({t, dense[t]}));
  }
  return out;
}

std::vector<double> sparse_as_dense(const json& j, std::size_t dimension) {
  std::vector<double> dense(dimension, 0.0);
  for (const Entry& e : sparse_from_json(j)) {
    if (e.term >= dimension) throw FormatError("model: term id outside model dimension");
    dense[e.term] = e.value;
  }
  return dense;
}

json svm_to_json(const LinearSvmModel& m) {
  return {{"weights", dense_as_sparse(m.weights)}, {"bias", m.bias}, {"c", m.c}};
}

LinearSvmModel svm_from_json(const json& j, std::size_t dimension) {
  LinearSvmModel m;
  m.weights = sparse_as_dense(j.at("weights"), dimension);
  m.bias = j.at("bias").get<double>();
  m.c = j.at("c").get<double>();
  return m;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

double parse_double(std::string_view s, std::size_t line_number) {
  // from_chars for double is missing from older libstdc++; strtod on a copy.
  const std::string copy(s);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw FormatError("vector file line " + std::to_string(line_number) + ": bad number '" + copy + "'");
  }
  return v;
}

}  // namespace

std::vector<WeightedVector> VectorFile::as_weighted() const {
  std::vector<WeightedVector> out;
  out.reserve(vectors.size());
  for (const SparseVector& v : vectors) out.push_back({v.entries, normalized});
  return out;
}

void write_vector_file(std::ostream& out, const VectorFile& file) {
  out << "#termweight-vectors\tv1\t" << (file.weighted ? "weighted" : "raw") << "\tnormalized="
      << (file.normalized ? 1 : 0) << '\n';
  char buf[40];
  for (std::size_t i = 0; i < file.vectors.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", file.vectors[i].max_tf);
    out << file.ids.at(i) << '\t' << file.labels.at(i) << '\t' << buf << '\t';
    bool first = true;
    for (const Entry& e : file.vectors[i].entries) {
      std::snprintf(buf, sizeof buf, "%.17g", e.value);
      if (!first) out << ' ';
      out << e.term << ':' << buf;
      first = false;
    }
    out << '\n';
  }
}

void save_vector_file(const std::filesystem::path& path, const VectorFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write vector file: " + path.string());
  write_vector_file(out, file);
  if (!out) throw Error("failed writing vector file: " + path.string());
}

VectorFile read_vector_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("vector file is empty");
  const auto header = split_tabs(line);
  if (header.size() != 4 || header[0] != "#termweight-vectors") throw FormatError("not a termweight vector file");
  if (header[1] != "v1") throw FormatError("unsupported vector file version '" + std::string(header[1]) + "'");
  VectorFile file;
  if (header[2] == "weighted") {
    file.weighted = true;
  } else if (header[2] != "raw") {
    throw FormatError("vector file: unknown kind '" + std::string(header[2]) + "'");
  }
  file.normalized = header[3] == "normalized=1";

  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 4) {
      throw FormatError("vector file line " + std::to_string(line_number) + ": expected 4 tab-separated fields");
    }
    SparseVector v;
    v.max_tf = parse_double(fields[2], line_number);
    std::string_view rest = fields[3];
    while (!rest.empty()) {
      const std::size_t space = rest.find(' ');
      const std::string_view item = rest.substr(0, space);
      rest = space == std::string_view::npos ? std::string_view{} : rest.substr(space + 1);
      if (item.empty()) continue;
      const std::size_t colon = item.find(':');
      if (colon == std::string_view::npos) {
        throw FormatError("vector file line " + std::to_string(line_number) + ": expected term:value");
      }
      TermId term = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + colon, term);
      if (ec != std::errc() || ptr != item.data() + colon) {
        throw FormatError("vector file line " + std::to_string(line_number) + ": bad term id");
      }
      if (!v.entries.empty() && v.entries.back().term >= term) {
        throw FormatError("vector file line " + std::to_string(line_number) + ": term ids must increase");
      }
      v.entries.push_back({term, parse_double(item.substr(colon + 1), line_number)});
    }
    file.ids.emplace_back(fields[0]);
    file.labels.emplace_back(fields[1]);
    file.vectors.push_back(std::move(v));
  }
  return file;
}

VectorFile load_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read vector file: " + path.string());
  return read_vector_file(in);
}

void save_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const std::string& l : lines) out << l << '\n';
}

std::vector<std::string> load_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

json model_to_json(const StoredModel& stored) {
  json j = {{"format", "termweight-model"},
            {"version", 1},
            {"classifier", classifier_name(stored.classifier)},
            {"scheme", stored.scheme},
            {"categories", stored.categories},
            {"dimension", stored.dimension}};
  j["positive"] = stored.positive ? json(*stored.positive) : json(nullptr);

  if (const auto* knn = std::get_if<KnnModel>(&stored.model)) {
    json vectors = json::array();
    for (const WeightedVector& v : knn->vectors()) vectors.push_back(sparse_to_json(v.entries));
    j["k"] = knn->k();
    j["labels"] = std::vector<CategoryId>(knn->labels().begin(), knn->labels().end());
    j["vectors"] = std::move(vectors);
  } else if (const auto* centroid = std::get_if<CentroidModel>(&stored.model)) {
    json rows = json::array();
    for (CategoryId c = 0; c < centroid->num_categories(); ++c) rows.push_back(dense_as_sparse(centroid->centroid(c)));
    j["centroids"] = std::move(rows);
  } else if (const auto* svm = std::get_if<LinearSvmModel>(&stored.model)) {
    j["svm"] = svm_to_json(*svm);
  } else if (const auto* ovr = std::get_if<OneVsRestSvm>(&stored.model)) {
    json models = json::array();
    for (std::size_t m = 0; m < ovr->models().size(); ++m) {
      json entry = svm_to_json(ovr->models()[m]);
      entry["category"] = ovr->categories()[m];
      models.push_back(std::move(entry));
    }
    j["one_vs_rest"] = std::move(models);
  } else {
    throw Error("cannot serialize an empty model");
  }
  return j;
}

StoredModel model_from_json(const json& j) {
  try {
    if (j.at("format") != "termweight-model") throw FormatError("not a termweight model file");
    if (j.at("version") != 1) throw FormatError("unsupported model version");
    StoredModel stored;
    stored.classifier = parse_classifier(j.at("classifier").get<std::string>());
    stored.scheme = j.at("scheme").get<std::string>();
    stored.categories = j.at("categories").get<std::vector<std::string>>();
    stored.dimension = j.at("dimension").get<std::size_t>();
    if (!j.at("positive").is_null()) stored.positive = j.at("positive").get<std::string>();

    switch (stored.classifier) {
      case ClassifierKind::Knn: {
        std::vector<WeightedVector> vectors;
        for (const json& v : j.at("vectors")) vectors.push_back({sparse_from_json(v), true});
        stored.model.emplace<KnnModel>(std::move(vectors), j.at("labels").get<std::vector<CategoryId>>(),
                                       j.at("k").get<std::size_t>());
        break;
      }
      case ClassifierKind::Centroid: {
        std::vector<double> matrix;
        const json& rows = j.at("centroids");
        for (const json& row : rows) {
          const auto dense = sparse_as_dense(row, stored.dimension);
          matrix.insert(matrix.end(), dense.begin(), dense.end());
        }
        stored.model.emplace<CentroidModel>(std::move(matrix), rows.size(), stored.dimension);
        break;
      }
      case ClassifierKind::Svm: {
        if (j.contains("svm")) {
          stored.model = svm_from_json(j.at("svm"), stored.dimension);
        } else {
          std::vector<LinearSvmModel> models;
          std::vector<CategoryId> categories;
          for (const json& m : j.at("one_vs_rest")) {
            models.push_back(svm_from_json(m, stored.dimension));
            categories.push_back(m.at("category").get<CategoryId>());
          }
          stored.model.emplace<OneVsRestSvm>(std::move(models), std::move(categories));
        }
        break;
      }
    }
    return stored;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
}

}  // namespace termweight
