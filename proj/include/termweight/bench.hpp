#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "termweight/classify.hpp"
#include "termweight/corpus.hpp"
#include "termweight/eval.hpp"
#include "termweight/stats.hpp"
#include "termweight/weighting.hpp"

namespace termweight {

/// One experiment, read from a flat `key = value` file. Keys:
///
///   corpus            path, relative to the config file's directory
///   format            dir | lines                         (default dir)
///   corpus_name       label written to reports            (default: corpus dir name)
///   split             given | stratified:<fraction>       (default stratified:0.33)
///   seeds             comma list of trial seeds           (default 1)
///   trials            must equal the number of seeds      (optional)
///   schemes           comma list of scheme names
///   classifiers       comma list of knn, centroid, svm
///   normalize         true | false                        (default true)
///   min_global_count  integer >= 1                        (default 1)
///   k                 kNN neighbours                      (default 10)
///   svm_c             SVM penalty                         (default 1.0)
///   stopwords         stopword file                       (default: bundled list)
///   output_dir        where reports go, relative to the config file (default out)
///
/// Blank lines and lines starting with '#' are ignored.
struct ExperimentConfig {
  std::filesystem::path corpus;
  CorpusFormat format = CorpusFormat::Dir;
  std::string corpus_name;
  SplitPolicy split = SplitPolicy::stratified(0.33);
  std::vector<std::uint64_t> seeds{1};
  std::vector<Scheme> schemes;
  std::vector<ClassifierKind> classifiers;
  bool normalize = true;
  std::size_t min_global_count = 1;
  std::size_t k = 10;
  double svm_c = 1.0;
  std::optional<std::filesystem::path> stopwords;
  std::filesystem::path output_dir = "out";

  std::size_t trials() const { return seeds.size(); }
  /// Throws ConfigError when an invariant does not hold.
  void validate() const;
};

/// `base_dir` resolves relative paths; ConfigError on unknown keys or bad values.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Everything derived from the training split of one trial. The test split
/// contributes only `test_vectors`/`test_labels`.
struct TrialData {
  std::uint64_t seed = 0;
  CorpusSplit split;
  Vocabulary vocabulary;
  CorpusStats corpus_stats;
  TermStats term_stats;
  std::vector<SparseVector> train_vectors;
  std::vector<CategoryId> train_labels;
  std::vector<SparseVector> test_vectors;
  std::vector<CategoryId> test_labels;
  std::vector<std::string> test_ids;
};

TrialData prepare_trial(const Corpus& corpus, const SplitPolicy& policy, std::uint64_t seed,
                        std::size_t min_global_count);

/// FNV-1a digest of the vocabulary, corpus/term statistics and training vectors.
std::uint64_t training_fingerprint(const TrialData& trial);

struct ClassifierSettings {
  std::size_t k = 10;
  double svm_c = 1.0;
  std::uint64_t seed = 1;
};

/// Human-readable classifier label used in reports, e.g. "svm(linear,C=1)".
std::string classifier_label(ClassifierKind kind, const ClassifierSettings& settings);

/// Trains one classifier on weighted training vectors and predicts every
/// test vector. Categories without training documents are never predicted.
/// `fallbacks` counts zero-vector queries.
std::vector<CategoryId> train_and_predict(ClassifierKind kind, const ClassifierSettings& settings,
                                          std::span<const WeightedVector> train, std::span<const CategoryId> train_labels,
                                          std::span<const WeightedVector> test, std::size_t num_categories,
                                          std::size_t dimension, std::size_t* fallbacks = nullptr);

struct TaskResult {
  Scheme scheme = Scheme::Tf;
  ClassifierKind classifier = ClassifierKind::Knn;
  std::uint64_t seed = 0;
  EvalReport report;
  /// Binary protocol only: positive-class counts per task, in category order.
  std::vector<BinaryCounts> tasks;
  std::chrono::duration<double> duration{};
};

struct AggregateRow {
  Scheme scheme = Scheme::Tf;
  ClassifierKind classifier = ClassifierKind::Knn;
  std::string classifier_label;
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
  std::vector<std::uint64_t> seeds;
};

struct SignificanceRow {
  ClassifierKind classifier = ClassifierKind::Knn;
  Scheme scheme_a = Scheme::Tf;
  Scheme scheme_b = Scheme::Tf;
  std::uint64_t seed = 0;
  McNemarResult test;
};

enum class Protocol { Multiclass, BinaryLocal };

struct ResultsTable {
  Protocol protocol = Protocol::Multiclass;
  ExperimentConfig config;
  std::vector<TaskResult> trials;
  std::vector<AggregateRow> rows;
  std::vector<SignificanceRow> significance;
  std::vector<std::string> warnings;
};

using LogSink = std::function<void(const std::string&)>;

/// Multi-class comparison of unsupervised schemes. Supervised schemes are a
/// ConfigError. Rows are means over trials, in config order.
ResultsTable run_multiclass(const ExperimentConfig& config, const Corpus& corpus, const LogSink& log = {});
ResultsTable run_multiclass(const ExperimentConfig& config, const LogSink& log = {});

/// One-vs-rest binary tasks under local policy: every category with
/// training documents is the positive class once; supervised weights use
/// that task's contingency tables. Per-task positive-class counts are
/// pooled into macro/micro F1.
ResultsTable run_binary_local(const ExperimentConfig& config, const Corpus& corpus, const LogSink& log = {});
ResultsTable run_binary_local(const ExperimentConfig& config, const LogSink& log = {});

inline constexpr int kResultsSchemaVersion = 1;

/// Columns: scheme,classifier,macro_f1,micro_f1,seed,corpus. `seed` lists the
/// trial seeds separated by ';'.
void write_results_csv(std::ostream& out, const ResultsTable& table);
/// Columns: classifier,scheme_a,scheme_b,seed,n01,n10,statistic,significant_at_0.01
void write_significance_csv(std::ostream& out, const ResultsTable& table);
nlohmann::json results_to_json(const ResultsTable& table);

/// Writes results.csv, results.json and significance.csv into `dir`.
void write_outputs(const ResultsTable& table, const std::filesystem::path& dir);

/// Corpus loaded with the config's stopwords and format.
Corpus load_config_corpus(const ExperimentConfig& config);

}  // namespace termweight
