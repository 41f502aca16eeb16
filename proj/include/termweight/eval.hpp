#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "termweight/sparse.hpp"

namespace termweight {

/// One test document's outcome in one task. Binary tasks use label 1 for the
/// positive category and 0 for the negative one.
struct PredictionRecord {
  std::string doc_id;
  CategoryId truth = 0;
  CategoryId predicted = 0;

  bool correct() const { return truth == predicted; }
  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

struct CategoryScore {
  std::string name;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  /// Test documents whose true label is this category (tp + fn).
  std::size_t support = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const CategoryScore&, const CategoryScore&) = default;
};

struct ExperimentMeta {
  std::string scheme;
  std::string classifier;
  std::uint64_t seed = 0;
  std::string corpus;

  friend bool operator==(const ExperimentMeta&, const ExperimentMeta&) = default;
};

struct EvalReport {
  std::vector<CategoryScore> per_category;
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
  /// confusion[truth][predicted]; empty for pooled binary reports.
  std::vector<std::vector<std::size_t>> confusion;
  ExperimentMeta meta;
  std::vector<PredictionRecord> records;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// 2pr / (p + r), 0 when p + r = 0.
double f1(double precision, double recall);

/// Per-category precision/recall/F1 over categories [0, num_categories).
/// Macro-F1 averages over categories with test support; micro-F1 pools
/// TP/FP/FN. Throws Error on an empty record set or out-of-range label.
EvalReport multiclass_scores(std::span<const PredictionRecord> records, std::size_t num_categories);

struct BinaryCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double f1() const;
  friend bool operator==(const BinaryCounts&, const BinaryCounts&) = default;
};

/// Positive-class counts of one binary task's records (label 1 = positive).
BinaryCounts binary_counts(std::span<const PredictionRecord> records);

struct PooledScores {
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
};

/// Macro: mean of per-task positive-class F1. Micro: F1 of (sum TP, sum FP, sum FN).
PooledScores binary_pooled_scores(std::span<const BinaryCounts> tasks);

struct McNemarResult {
  /// A wrong, B right.
  std::size_t n01 = 0;
  /// A right, B wrong.
  std::size_t n10 = 0;
  double statistic = 0.0;
  bool significant = false;
};

/// Chi-square critical value, 1 degree of freedom, alpha = 0.01.
inline constexpr double kMcNemarCritical = 6.635;

/// Continuity-corrected McNemar test on paired records, matched by doc_id.
/// statistic = (|n01 - n10| - 1)^2 / (n01 + n10), 0 when no discordant pair.
/// Throws Error when the two record sets cover different documents.
McNemarResult mcnemar(std::span<const PredictionRecord> a, std::span<const PredictionRecord> b);

void to_json(nlohmann::json& j, const PredictionRecord& r);
void from_json(const nlohmann::json& j, PredictionRecord& r);
void to_json(nlohmann::json& j, const CategoryScore& s);
void from_json(const nlohmann::json& j, CategoryScore& s);
void to_json(nlohmann::json& j, const ExperimentMeta& m);
void from_json(const nlohmann::json& j, ExperimentMeta& m);
void to_json(nlohmann::json& j, const EvalReport& r);
void from_json(const nlohmann::json& j, EvalReport& r);

}  // namespace termweight
