#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "termweight/corpus.hpp"
#include "termweight/sparse.hpp"

namespace termweight {

/// Per-term document statistics over the training split.
///
/// A term "occurs" in a document when its raw tf is at least 1. Per-category
/// document frequencies are stored row-major, one row of
/// `num_category_slots()` counts per term.
class TermStats {
 public:
  TermStats() = default;
  TermStats(std::size_t vocab_size, std::size_t num_category_slots);

  /// Single reduction pass over the training vectors. Throws
  /// ConsistencyError on a term id >= |V| or a label outside the category table.
  static TermStats build(std::span<const SparseVector> train, std::span<const CategoryId> labels,
                         const CorpusStats& corpus);

  std::size_t vocab_size() const { return df_.size(); }
  std::size_t num_category_slots() const { return slots_; }

  std::uint32_t df(TermId term) const { return df_.at(term); }
  std::uint32_t cf(TermId term) const { return cf_.at(term); }
  std::uint32_t category_df(TermId term, CategoryId category) const { return per_category_.at(term * slots_ + category); }
  std::span<const std::uint32_t> per_category_df(TermId term) const {
    return std::span<const std::uint32_t>(per_category_).subspan(term * slots_, slots_);
  }

  /// Overwrites one term's row and recomputes its df and cf.
  void set_row(TermId term, std::span<const std::uint32_t> per_category_df);

  friend bool operator==(const TermStats&, const TermStats&) = default;

 private:
  std::size_t slots_ = 0;
  std::vector<std::uint32_t> df_;
  std::vector<std::uint32_t> cf_;
  std::vector<std::uint32_t> per_category_;
};

/// Document counts for one (term, positive category) pair:
///   a: positive docs containing the term     c: negative docs containing it
///   b: positive docs without the term        d: negative docs without it
struct ContingencyTable {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t d = 0;

  std::uint64_t total() const { return a + b + c + d; }
  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

ContingencyTable contingency(TermId term, CategoryId positive, const TermStats& stats, const CorpusStats& corpus);

/// Everything a later binary task needs from one statistics pass.
struct StatsBundle {
  std::vector<std::string> categories;
  Vocabulary vocabulary;
  CorpusStats corpus;
  TermStats terms;
};

/// Sidecar text format, version 1:
///
///   #termweight-stats<TAB>v1<TAB><|Tr|><TAB><|C|><TAB><|V|>
///   #categories<TAB><name>=<train docs><TAB>...
///   <term><TAB><df><TAB><cf><TAB><per-category df, comma separated>
///   ...
///
/// Term rows are in term-id order; the comma list follows category-id order.
void write_stats_sidecar(std::ostream& out, const StatsBundle& bundle);
void save_stats_sidecar(const std::filesystem::path& path, const StatsBundle& bundle);
StatsBundle read_stats_sidecar(std::istream& in);
StatsBundle load_stats_sidecar(const std::filesystem::path& path);

}  // namespace termweight
