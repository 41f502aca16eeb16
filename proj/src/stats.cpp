#include "termweight/stats.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "termweight/error.hpp"

namespace termweight {

namespace {

std::vector<std::string_view> split_on(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_count(std::string_view text, std::size_t line_number) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("stats sidecar line " + std::to_string(line_number) + ": bad count '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

TermStats::TermStats(std::size_t vocab_size, std::size_t num_category_slots)
    : slots_(num_category_slots), df_(vocab_size, 0), cf_(vocab_size, 0), per_category_(vocab_size * num_category_slots, 0) {}

TermStats TermStats::build(std::span<const SparseVector> train, std::span<const CategoryId> labels,
                           const CorpusStats& corpus) {
  if (train.size() != labels.size()) throw ConsistencyError("training vectors and labels differ in length");
  TermStats stats(corpus.vocab_size, corpus.docs_per_category.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const CategoryId label = labels[i];
    if (label >= stats.slots_) throw ConsistencyError("label out of range: " + std::to_string(label));
    for (const Entry& e : train[i].entries) {
      if (e.term >= stats.df_.size()) {
        throw ConsistencyError("term id " + std::to_string(e.term) + " outside vocabulary of size " +
                               std::to_string(stats.df_.size()));
      }
      if (e.value < 1.0) continue;
      ++stats.df_[e.term];
      std::uint32_t& cell = stats.per_category_[e.term * stats.slots_ + label];
      if (cell++ == 0) ++stats.cf_[e.term];
    }
  }
  return stats;
}

void TermStats::set_row(TermId term, std::span<const std::uint32_t> per_category_df) {
  if (per_category_df.size() != slots_) throw ConsistencyError("per-category row has wrong width");
  std::uint32_t df = 0;
  std::uint32_t cf = 0;
  for (std::size_t c = 0; c < slots_; ++c) {
    per_category_.at(term * slots_ + c) = per_category_df[c];
    df += per_category_df[c];
    cf += per_category_df[c] > 0 ? 1 : 0;
  }
  df_.at(term) = df;
  cf_.at(term) = cf;
}

ContingencyTable contingency(TermId term, CategoryId positive, const TermStats& stats, const CorpusStats& corpus) {
  if (positive >= corpus.docs_per_category.size()) {
    throw ConfigError("positive category out of range: " + std::to_string(positive));
  }
  ContingencyTable t;
  t.a = stats.category_df(term, positive);
  t.c = stats.df(term) - t.a;
  t.b = corpus.docs_per_category[positive] - t.a;
  t.d = corpus.num_train_docs - t.a - t.b - t.c;
  return t;
}

void write_stats_sidecar(std::ostream& out, const StatsBundle& bundle) {
  const auto& corpus = bundle.corpus;
  out << "#termweight-stats\tv1\t" << corpus.num_train_docs << '\t' << corpus.num_categories() << '\t'
      << corpus.vocab_size << '\n';
  out << "#categories";
  for (std::size_t c = 0; c < bundle.categories.size(); ++c) {
    out << '\t' << bundle.categories[c] << '=' << corpus.docs_per_category.at(c);
  }
  out << '\n';
  for (TermId t = 0; t < bundle.vocabulary.size(); ++t) {
    out << bundle.vocabulary.term(t) << '\t' << bundle.terms.df(t) << '\t' << bundle.terms.cf(t) << '\t';
    const auto row = bundle.terms.per_category_df(t);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    out << '\n';
  }
}

void save_stats_sidecar(const std::filesystem::path& path, const StatsBundle& bundle) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write stats sidecar: " + path.string());
  write_stats_sidecar(out, bundle);
  if (!out) throw Error("failed writing stats sidecar: " + path.string());
}

StatsBundle read_stats_sidecar(std::istream& in) {
  std::string line;
  std::size_t line_number = 1;
  if (!std::getline(in, line)) throw FormatError("stats sidecar is empty");
  auto header = split_on(line, '\t');
  if (header.size() != 5 || header[0] != "#termweight-stats") throw FormatError("not a stats sidecar");
  if (header[1] != "v1") throw FormatError("unsupported stats sidecar version '" + std::string(header[1]) + "'");
  const auto num_train = parse_count<std::size_t>(header[2], line_number);
  const auto num_categories = parse_count<std::size_t>(header[3], line_number);
  const auto vocab_size = parse_count<std::size_t>(header[4], line_number);

  ++line_number;
  if (!std::getline(in, line)) throw FormatError("stats sidecar: missing #categories row");
  auto cat_fields = split_on(line, '\t');
  if (cat_fields.empty() || cat_fields[0] != "#categories") throw FormatError("stats sidecar: missing #categories row");

  StatsBundle bundle;
  bundle.corpus.num_train_docs = num_train;
  bundle.corpus.vocab_size = vocab_size;
  for (std::size_t i = 1; i < cat_fields.size(); ++i) {
    const std::size_t eq = cat_fields[i].rfind('=');
    if (eq == std::string_view::npos) throw FormatError("stats sidecar: bad category field");
    bundle.categories.emplace_back(cat_fields[i].substr(0, eq));
    bundle.corpus.docs_per_category.push_back(parse_count<std::size_t>(cat_fields[i].substr(eq + 1), line_number));
  }
  if (bundle.corpus.num_categories() != num_categories) {
    throw FormatError("stats sidecar: |C| in header disagrees with #categories row");
  }

  const std::size_t slots = bundle.categories.size();
  std::vector<std::string> terms;
  std::vector<std::vector<std::uint32_t>> rows;
  terms.reserve(vocab_size);
  rows.reserve(vocab_size);
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto fields = split_on(line, '\t');
    if (fields.size() != 4) throw FormatError("stats sidecar line " + std::to_string(line_number) + ": expected 4 fields");
    const auto df = parse_count<std::uint32_t>(fields[1], line_number);
    const auto cf = parse_count<std::uint32_t>(fields[2], line_number);
    std::vector<std::uint32_t> row;
    for (auto cell : split_on(fields[3], ',')) row.push_back(parse_count<std::uint32_t>(cell, line_number));
    if (row.size() != slots) throw FormatError("stats sidecar line " + std::to_string(line_number) + ": wrong row width");
    terms.emplace_back(fields[0]);
    rows.push_back(std::move(row));
    std::uint32_t sum = 0;
    std::uint32_t nonzero = 0;
    for (auto v : rows.back()) {
      sum += v;
      nonzero += v > 0;
    }
    if (sum != df || nonzero != cf) {
      throw FormatError("stats sidecar line " + std::to_string(line_number) + ": df/cf disagree with row");
    }
  }
  if (terms.size() != vocab_size) throw FormatError("stats sidecar: term rows disagree with |V|");

  // Rows are written in id order, which is lexicographic term order.
  bundle.vocabulary = Vocabulary::from_terms(terms);
  bundle.terms = TermStats(vocab_size, slots);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto id = bundle.vocabulary.find(terms[i]);
    if (!id || *id != i) throw FormatError("stats sidecar: term rows are not in id order");
    bundle.terms.set_row(*id, rows[i]);
  }
  return bundle;
}

StatsBundle load_stats_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read stats sidecar: " + path.string());
  return read_stats_sidecar(in);
}

}  // namespace termweight
