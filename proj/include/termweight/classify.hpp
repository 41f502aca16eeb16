#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "termweight/sparse.hpp"

namespace termweight {

enum class ClassifierKind { Knn, Centroid, Svm };

std::string_view classifier_name(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view name);

struct Prediction {
  CategoryId label = 0;
  /// Set when the query was the zero vector and the label is the fallback
  /// (smallest category id).
  bool fallback = false;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Cosine k-nearest-neighbour classifier over an inverted index of the
/// training vectors.
///
/// The k most similar training documents vote; equal similarities at the
/// k-th place go to the earlier training document. A vote tie is broken by
/// the larger summed similarity, then by the smaller category id.
class KnnModel {
 public:
  /// Stored vectors are L2-normalized if they are not already. Throws
  /// ConfigError for k == 0 or an empty training set.
  KnnModel(std::vector<WeightedVector> vectors, std::vector<CategoryId> labels, std::size_t k);

  Prediction classify(const WeightedVector& query) const;

  /// Cosine similarity of the query against every training document.
  std::vector<double> similarities(const WeightedVector& query) const;

  std::size_t k() const { return k_; }
  std::span<const WeightedVector> vectors() const { return vectors_; }
  std::span<const CategoryId> labels() const { return labels_; }

 private:
  struct Posting {
    std::uint32_t doc;
    double value;
  };

  std::size_t k_;
  std::size_t num_categories_;
  std::vector<WeightedVector> vectors_;
  std::vector<CategoryId> labels_;
  std::vector<std::vector<Posting>> postings_;
};

inline Prediction knn_classify(const KnnModel& model, const WeightedVector& query) { return model.classify(query); }

/// One L2-normalized mean vector per category, stored densely.
class CentroidModel {
 public:
  /// centroid_c = normalize(mean of the normalized training vectors of c).
  /// Throws ConfigError when a category in [0, num_categories) has no vector.
  static CentroidModel train(std::span<const WeightedVector> vectors, std::span<const CategoryId> labels,
                             std::size_t num_categories, std::size_t dimension);

  /// Rebuilds a model from stored centroid rows (num_categories x dimension).
  CentroidModel(std::vector<double> centroids, std::size_t num_categories, std::size_t dimension);

  /// argmax_c cosine(query, centroid_c); ties go to the smaller category id.
  Prediction classify(const WeightedVector& query) const;

  std::vector<double> similarities(const WeightedVector& query) const;

  std::span<const double> centroid(CategoryId category) const {
    return std::span<const double>(centroids_).subspan(category * dimension_, dimension_);
  }
  std::size_t num_categories() const { return num_categories_; }
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t num_categories_;
  std::size_t dimension_;
  std::vector<double> centroids_;
};

inline CentroidModel centroid_train(std::span<const WeightedVector> vectors, std::span<const CategoryId> labels,
                                    std::size_t num_categories, std::size_t dimension) {
  return CentroidModel::train(vectors, labels, num_categories, dimension);
}
inline Prediction centroid_classify(const CentroidModel& model, const WeightedVector& query) {
  return model.classify(query);
}

enum class Polarity : std::int8_t { Negative = -1, Positive = 1 };

inline double sign_of(Polarity p) { return p == Polarity::Positive ? 1.0 : -1.0; }
inline Polarity flipped(Polarity p) { return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive; }

struct SvmOptions {
  double c = 1.0;
  /// Stop when the projected-gradient spread of an epoch is within tolerance.
  double tolerance = 1e-3;
  std::size_t max_epochs = 1000;
  std::uint64_t seed = 1;
  /// Constant appended to every instance; its weight is the bias.
  double bias_feature = 1.0;
};

struct SvmTrace {
  /// Dual objective 0.5 |w|^2 - sum(alpha) after each epoch (minimisation form).
  std::vector<double> dual_objective;
  std::vector<double> alpha;
  std::size_t epochs = 0;
  bool converged = false;
};

/// L2-regularized hinge-loss linear SVM. The bias is learned as the weight of
/// a constant extra feature.
struct LinearSvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  double c = 1.0;

  double decision_value(const WeightedVector& query) const { return dot_dense(query.entries, weights) + bias; }
};

/// Dual coordinate descent with shrinking over a seeded random permutation
/// per epoch. Throws ConfigError when only one class is present or C <= 0.
LinearSvmModel svm_train(std::span<const WeightedVector> vectors, std::span<const Polarity> labels,
                         std::size_t dimension, const SvmOptions& options = {}, SvmTrace* trace = nullptr);

struct SvmDecision {
  Polarity polarity = Polarity::Negative;
  double value = 0.0;
};

/// Positive iff w.x + b > 0.
SvmDecision svm_classify(const LinearSvmModel& model, const WeightedVector& query);

/// One binary SVM per category; the prediction is the argmax decision value
/// (ties to the smaller category id). Categories without training vectors
/// get no model and are never predicted.
class OneVsRestSvm {
 public:
  static OneVsRestSvm train(std::span<const WeightedVector> vectors, std::span<const CategoryId> labels,
                            std::size_t num_categories, std::size_t dimension, const SvmOptions& options = {});

  Prediction classify(const WeightedVector& query) const;
  std::span<const LinearSvmModel> models() const { return models_; }
  std::span<const CategoryId> categories() const { return categories_; }

  OneVsRestSvm(std::vector<LinearSvmModel> models, std::vector<CategoryId> categories)
      : models_(std::move(models)), categories_(std::move(categories)) {}

 private:
  std::vector<LinearSvmModel> models_;
  std::vector<CategoryId> categories_;
};

}  // namespace termweight
