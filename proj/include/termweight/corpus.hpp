#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "termweight/sparse.hpp"

namespace termweight {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

using StopwordSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

/// English stopword list bundled with the library (data/stopwords_en.txt).
StopwordSet default_stopwords();

/// Reads one term per line. Blank lines and lines starting with '#' are ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

/// Splits text into maximal runs of ASCII letters, lowercases them and drops
/// stopwords. Digits, punctuation, whitespace and non-ASCII bytes separate
/// tokens and are discarded. No stemming.
std::vector<std::string> tokenize(std::string_view raw_text, const StopwordSet& stopwords);

enum class CorpusFormat {
  Dir,    ///< <root>/<category>/<docfile>
  Lines,  ///< one "label \t text" record per line
};

CorpusFormat parse_corpus_format(std::string_view name);
std::string_view corpus_format_name(CorpusFormat format);

enum class SplitTag : std::uint8_t { None, Train, Test };

struct Document {
  std::string id;
  CategoryId label = 0;
  std::vector<std::string> tokens;
  SplitTag designated = SplitTag::None;
};

struct Corpus {
  /// Sorted category names; the index is the CategoryId.
  std::vector<std::string> categories;
  std::vector<Document> documents;
  /// Documents whose text produced no tokens (kept, counted).
  std::size_t empty_documents = 0;

  std::size_t num_categories() const { return categories.size(); }
  std::optional<CategoryId> find_category(std::string_view name) const;
  bool has_designated_split() const;
};

/// Builds a corpus from labelled (id, category name, raw text) records and
/// assigns category ids in lexicographic order of the names.
struct RawDocument {
  std::string id;
  std::string category;
  std::string text;
  SplitTag designated = SplitTag::None;
};
Corpus build_corpus(std::span<const RawDocument> raw, const StopwordSet& stopwords);

/// Loads a corpus from disk.
///
/// `dir`: every subdirectory of `path` is a category and every regular file
/// in it one document. If `path` holds exactly the two subdirectories `train`
/// and `test`, each is read as its own `dir` tree and the documents carry
/// that designated split.
///
/// `lines`: `path` is a file of `label \t text` records. If `path` is a
/// directory it must contain `train.tsv` and `test.tsv`, read as a
/// designated split.
///
/// Documents are ordered lexicographically by relative path (dir) or by
/// line number (lines). Throws IngestionError on unreadable input or when
/// no document is found.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, const StopwordSet& stopwords);

class SplitPolicy {
 public:
  enum class Kind { Given, Stratified };

  static SplitPolicy given() { return SplitPolicy(Kind::Given, 0.0); }
  static SplitPolicy stratified(double test_fraction);
  /// Accepts "given" or "stratified:<fraction>".
  static SplitPolicy parse(std::string_view text);

  Kind kind() const { return kind_; }
  double test_fraction() const { return test_fraction_; }
  std::string to_string() const;

 private:
  SplitPolicy(Kind kind, double fraction) : kind_(kind), test_fraction_(fraction) {}
  Kind kind_;
  double test_fraction_;
};

/// Indices into Corpus::documents, each list ascending.
struct CorpusSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified: for each category with n documents, floor(fraction * n)
/// documents are drawn for test through a seeded Fisher-Yates permutation.
/// A category with fewer than two documents is a SplitError.
/// Given: uses the corpus' designated split.
CorpusSplit split_corpus(const Corpus& corpus, const SplitPolicy& policy, std::uint64_t seed);

/// Bijective term <-> id map. Ids are assigned in lexicographic term order.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Counts term occurrences over the training documents and keeps terms
  /// seen at least `min_global_count` times.
  static Vocabulary build(const Corpus& corpus, std::span<const std::size_t> train, std::size_t min_global_count);

  /// Terms must be unique; they are sorted before ids are assigned.
  static Vocabulary from_terms(std::vector<std::string> terms);

  std::optional<TermId> find(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_.at(id); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId, StringHash, std::equal_to<>> ids_;
};

/// Raw term counts of one document; terms outside the vocabulary are dropped.
SparseVector vectorize(std::span<const std::string> tokens, const Vocabulary& vocabulary);
inline SparseVector vectorize(const Document& document, const Vocabulary& vocabulary) {
  return vectorize(document.tokens, vocabulary);
}

/// Training-set wide counts.
struct CorpusStats {
  std::size_t num_train_docs = 0;
  std::size_t vocab_size = 0;
  /// Indexed by CategoryId over every category of the corpus; categories
  /// without training documents hold 0.
  std::vector<std::size_t> docs_per_category;

  /// |C|: categories with at least one training document.
  std::size_t num_categories() const;
};

/// Throws ConsistencyError when fewer than two categories have training documents.
CorpusStats make_corpus_stats(std::span<const CategoryId> train_labels, std::size_t num_category_slots,
                              std::size_t vocab_size);

}  // namespace termweight
