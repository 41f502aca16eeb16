#include "termweight/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "termweight/error.hpp"
#include "termweight/random.hpp"

namespace termweight {

namespace fs = std::filesystem;

// Generated at configure time from data/stopwords_en.txt.
extern const char* const kBundledStopwords;

namespace {

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string word = line.substr(start);
    for (char& ch : word) {
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    }
    words.emplace(std::move(word));
  }
  return words;
}

bool is_ascii_alpha(unsigned char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z'); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IngestionError("cannot read file: " + path.string());
  return buffer.str();
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw IngestionError("cannot read directory: " + dir.string() + " (" + ec.message() + ")");
  for (const auto& entry : it) {
    if (directories ? entry.is_directory() : entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void read_dir_tree(const fs::path& root, const fs::path& id_prefix, SplitTag tag, std::vector<RawDocument>& out) {
  for (const fs::path& category_dir : sorted_entries(root, true)) {
    const std::string category = category_dir.filename().string();
    for (const fs::path& file : sorted_entries(category_dir, false)) {
      RawDocument doc;
      doc.id = (id_prefix / category / file.filename()).generic_string();
      doc.category = category;
      doc.text = read_file(file);
      doc.designated = tag;
      out.push_back(std::move(doc));
    }
  }
}

void read_lines_file(const fs::path& file, std::string_view id_prefix, SplitTag tag, std::vector<RawDocument>& out) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IngestionError("cannot read file: " + file.string());
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw IngestionError(file.string() + ":" + std::to_string(line_number) + ": expected 'label<TAB>text'");
    }
    RawDocument doc;
    doc.id = std::string(id_prefix) + "line:" + std::to_string(line_number);
    doc.category = line.substr(0, tab);
    doc.text = line.substr(tab + 1);
    doc.designated = tag;
    out.push_back(std::move(doc));
  }
  if (in.bad()) throw IngestionError("cannot read file: " + file.string());
}

}  // namespace

StopwordSet default_stopwords() {
  std::istringstream in(kBundledStopwords);
  return parse_stopwords(in);
}

StopwordSet load_stopwords(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot read stopword file: " + path.string());
  return parse_stopwords(in);
}

std::vector<std::string> tokenize(std::string_view raw_text, const StopwordSet& stopwords) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < raw_text.size()) {
    if (!is_ascii_alpha(static_cast<unsigned char>(raw_text[i]))) {
      ++i;
      continue;
    }
    std::string token;
    while (i < raw_text.size() && is_ascii_alpha(static_cast<unsigned char>(raw_text[i]))) {
      char ch = raw_text[i++];
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
      token.push_back(ch);
    }
    if (!stopwords.contains(token)) tokens.push_back(std::move(token));
  }
  return tokens;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "dir") return CorpusFormat::Dir;
  if (name == "lines") return CorpusFormat::Lines;
  throw ConfigError("unknown corpus format '" + std::string(name) + "' (expected dir or lines)");
}

std::string_view corpus_format_name(CorpusFormat format) { return format == CorpusFormat::Dir ? "dir" : "lines"; }

std::optional<CategoryId> Corpus::find_category(std::string_view name) const {
  auto it = std::lower_bound(categories.begin(), categories.end(), name);
  if (it == categories.end() || *it != name) return std::nullopt;
  return static_cast<CategoryId>(it - categories.begin());
}

bool Corpus::has_designated_split() const {
  return !documents.empty() && std::all_of(documents.begin(), documents.end(),
                                           [](const Document& d) { return d.designated != SplitTag::None; });
}

Corpus build_corpus(std::span<const RawDocument> raw, const StopwordSet& stopwords) {
  if (raw.empty()) throw IngestionError("no documents");
  Corpus corpus;
  for (const RawDocument& doc : raw) corpus.categories.push_back(doc.category);
  std::sort(corpus.categories.begin(), corpus.categories.end());
  corpus.categories.erase(std::unique(corpus.categories.begin(), corpus.categories.end()), corpus.categories.end());

  corpus.documents.reserve(raw.size());
  for (const RawDocument& r : raw) {
    Document doc;
    doc.id = r.id;
    doc.label = *corpus.find_category(r.category);
    doc.tokens = tokenize(r.text, stopwords);
    doc.designated = r.designated;
    if (doc.tokens.empty()) ++corpus.empty_documents;
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const fs::path& path, CorpusFormat format, const StopwordSet& stopwords) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw IngestionError("corpus path does not exist: " + path.string());

  std::vector<RawDocument> raw;
  if (format == CorpusFormat::Dir) {
    if (!fs::is_directory(path)) throw IngestionError("dir corpus must be a directory: " + path.string());
    const auto subdirs = sorted_entries(path, true);
    const bool presplit = subdirs.size() == 2 && subdirs[0].filename() == "test" && subdirs[1].filename() == "train";
    if (presplit) {
      // Train first so document order follows the split, then path.
      read_dir_tree(path / "train", "train", SplitTag::Train, raw);
      read_dir_tree(path / "test", "test", SplitTag::Test, raw);
    } else {
      read_dir_tree(path, "", SplitTag::None, raw);
    }
  } else {
    if (fs::is_directory(path)) {
      const fs::path train = path / "train.tsv";
      const fs::path test = path / "test.tsv";
      if (!fs::is_regular_file(train) || !fs::is_regular_file(test)) {
        throw IngestionError("lines corpus directory must contain train.tsv and test.tsv: " + path.string());
      }
      read_lines_file(train, "train/", SplitTag::Train, raw);
      read_lines_file(test, "test/", SplitTag::Test, raw);
    } else {
      read_lines_file(path, "", SplitTag::None, raw);
    }
  }
  if (raw.empty()) throw IngestionError("no documents in corpus: " + path.string());
  return build_corpus(raw, stopwords);
}

SplitPolicy SplitPolicy::stratified(double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("stratified test fraction must lie in (0, 1), got " + std::to_string(test_fraction));
  }
  return SplitPolicy(Kind::Stratified, test_fraction);
}

SplitPolicy SplitPolicy::parse(std::string_view text) {
  if (text == "given") return given();
  constexpr std::string_view prefix = "stratified:";
  if (text.starts_with(prefix)) {
    const std::string number(text.substr(prefix.size()));
    std::size_t used = 0;
    double fraction = 0.0;
    try {
      fraction = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size()) throw ConfigError("bad split fraction: '" + number + "'");
    return stratified(fraction);
  }
  throw ConfigError("unknown split policy '" + std::string(text) + "' (expected given or stratified:<fraction>)");
}

std::string SplitPolicy::to_string() const {
  if (kind_ == Kind::Given) return "given";
  std::ostringstream out;
  out << "stratified:" << test_fraction_;
  return out.str();
}

CorpusSplit split_corpus(const Corpus& corpus, const SplitPolicy& policy, std::uint64_t seed) {
  CorpusSplit split;
  if (policy.kind() == SplitPolicy::Kind::Given) {
    if (!corpus.has_designated_split()) throw SplitError("corpus has no designated train/test split");
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      (corpus.documents[i].designated == SplitTag::Train ? split.train : split.test).push_back(i);
    }
    if (split.train.empty()) throw SplitError("designated split has no training documents");
    return split;
  }

  std::vector<std::vector<std::size_t>> by_category(corpus.num_categories());
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) by_category[corpus.documents[i].label].push_back(i);

  Rng rng(seed);
  for (CategoryId c = 0; c < by_category.size(); ++c) {
    auto& members = by_category[c];
    if (members.size() < 2) {
      throw SplitError("category '" + corpus.categories[c] + "' has " + std::to_string(members.size()) +
                       " document(s); stratified split needs at least 2");
    }
    // The epsilon keeps e.g. 0.29 * 100 from flooring to 28.
    const auto n_test =
        static_cast<std::size_t>(std::floor(policy.test_fraction() * static_cast<double>(members.size()) + 1e-9));
    rng.shuffle(std::span<std::size_t>(members));
    split.test.insert(split.test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train.insert(split.train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Vocabulary Vocabulary::build(const Corpus& corpus, std::span<const std::size_t> train, std::size_t min_global_count) {
  if (min_global_count < 1) throw ConfigError("min_global_count must be >= 1");
  std::unordered_map<std::string_view, std::size_t> counts;
  for (std::size_t index : train) {
    for (const std::string& token : corpus.documents.at(index).tokens) ++counts[token];
  }
  std::vector<std::string> terms;
  for (const auto& [term, count] : counts) {
    if (count >= min_global_count) terms.emplace_back(term);
  }
  return from_terms(std::move(terms));
}

Vocabulary Vocabulary::from_terms(std::vector<std::string> terms) {
  Vocabulary vocab;
  std::sort(terms.begin(), terms.end());
  if (std::adjacent_find(terms.begin(), terms.end()) != terms.end()) {
    throw ConsistencyError("vocabulary terms must be unique");
  }
  vocab.terms_ = std::move(terms);
  vocab.ids_.reserve(vocab.terms_.size());
  for (TermId id = 0; id < vocab.terms_.size(); ++id) vocab.ids_.emplace(vocab.terms_[id], id);
  return vocab;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

SparseVector vectorize(std::span<const std::string> tokens, const Vocabulary& vocabulary) {
  std::map<TermId, double> counts;
  for (const std::string& token : tokens) {
    if (auto id = vocabulary.find(token)) counts[*id] += 1.0;
  }
  SparseVector v;
  v.entries.reserve(counts.size());
  for (const auto& [term, count] : counts) {
    v.entries.push_back({term, count});
    v.max_tf = std::max(v.max_tf, count);
  }
  return v;
}

std::size_t CorpusStats::num_categories() const {
  return static_cast<std::size_t>(
      std::count_if(docs_per_category.begin(), docs_per_category.end(), [](std::size_t n) { return n > 0; }));
}

CorpusStats make_corpus_stats(std::span<const CategoryId> train_labels, std::size_t num_category_slots,
                              std::size_t vocab_size) {
  CorpusStats stats;
  stats.num_train_docs = train_labels.size();
  stats.vocab_size = vocab_size;
  stats.docs_per_category.assign(num_category_slots, 0);
  for (CategoryId label : train_labels) {
    if (label >= num_category_slots) throw ConsistencyError("training label out of range: " + std::to_string(label));
    ++stats.docs_per_category[label];
  }
  if (stats.num_categories() < 2) throw ConsistencyError("training split must cover at least 2 categories");
  return stats;
}

}  // namespace termweight
