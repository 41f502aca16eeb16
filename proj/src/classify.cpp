#include "termweight/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "termweight/error.hpp"
#include "termweight/random.hpp"
#include "termweight/weighting.hpp"

namespace termweight {

std::string_view classifier_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::Centroid: return "centroid";
    case ClassifierKind::Svm: return "svm";
  }
  return "?";
}

ClassifierKind parse_classifier(std::string_view name) {
  if (name == "knn") return ClassifierKind::Knn;
  if (name == "centroid") return ClassifierKind::Centroid;
  if (name == "svm") return ClassifierKind::Svm;
  throw ConfigError("unknown classifier '" + std::string(name) + "' (expected knn, centroid or svm)");
}

// ---------------------------------------------------------------- kNN

KnnModel::KnnModel(std::vector<WeightedVector> vectors, std::vector<CategoryId> labels, std::size_t k)
    : k_(k), num_categories_(0), vectors_(std::move(vectors)), labels_(std::move(labels)) {
  if (k_ == 0) throw ConfigError("kNN needs k >= 1");
  if (vectors_.empty()) throw ConfigError("kNN needs a non-empty training set");
  if (vectors_.size() != labels_.size()) throw ConsistencyError("kNN vectors and labels differ in length");

  TermId max_term = 0;
  for (WeightedVector& v : vectors_) {
    if (!v.normalized) v = normalize(std::move(v));
    if (!v.entries.empty()) max_term = std::max(max_term, v.entries.back().term);
  }
  num_categories_ = *std::max_element(labels_.begin(), labels_.end()) + 1;
  postings_.resize(static_cast<std::size_t>(max_term) + 1);
  for (std::uint32_t doc = 0; doc < vectors_.size(); ++doc) {
    for (const Entry& e : vectors_[doc].entries) postings_[e.term].push_back({doc, e.value});
  }
}

std::vector<double> KnnModel::similarities(const WeightedVector& query) const {
  std::vector<double> scores(vectors_.size(), 0.0);
  for (const Entry& q : query.entries) {
    if (q.term >= postings_.size()) continue;
    for (const Posting& p : postings_[q.term]) scores[p.doc] += q.value * p.value;
  }
  const double norm = l2_norm(query.entries);
  if (norm > 0.0) {
    for (double& s : scores) s /= norm;
  }
  return scores;
}

Prediction KnnModel::classify(const WeightedVector& query) const {
  if (l2_norm(query.entries) == 0.0) {
    return {*std::min_element(labels_.begin(), labels_.end()), true};
  }
  const std::vector<double> scores = similarities(query);
  std::vector<std::uint32_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0u);
  const std::size_t k = std::min(k_, order.size());
  auto better = [&](std::uint32_t x, std::uint32_t y) {
    if (scores[x] != scores[y]) return scores[x] > scores[y];
    return x < y;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), better);

  std::vector<std::size_t> votes(num_categories_, 0);
  std::vector<double> summed(num_categories_, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    ++votes[labels_[order[i]]];
    summed[labels_[order[i]]] += scores[order[i]];
  }
  CategoryId best = 0;
  for (CategoryId c = 1; c < num_categories_; ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && summed[c] > summed[best])) best = c;
  }
  return {best, false};
}

// ----------------------------------------------------------- centroid

CentroidModel::CentroidModel(std::vector<double> centroids, std::size_t num_categories, std::size_t dimension)
    : num_categories_(num_categories), dimension_(dimension), centroids_(std::move(centroids)) {
  if (num_categories_ == 0) throw ConfigError("centroid model needs at least one category");
  if (centroids_.size() != num_categories_ * dimension_) throw ConsistencyError("centroid matrix has wrong size");
}

CentroidModel CentroidModel::train(std::span<const WeightedVector> vectors, std::span<const CategoryId> labels,
                                   std::size_t num_categories, std::size_t dimension) {
  if (vectors.size() != labels.size()) throw ConsistencyError("centroid vectors and labels differ in length");
  std::vector<double> sums(num_categories * dimension, 0.0);
  std::vector<std::size_t> counts(num_categories, 0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const CategoryId c = labels[i];
    if (c >= num_categories) throw ConsistencyError("centroid label out of range: " + std::to_string(c));
    ++counts[c];
    const double norm = vectors[i].normalized ? 1.0 : l2_norm(vectors[i].entries);
    if (norm == 0.0) continue;
    for (const Entry& e : vectors[i].entries) {
      if (e.term >= dimension) throw ConsistencyError("term id outside centroid dimension");
      sums[c * dimension + e.term] += e.value / norm;
    }
  }
  for (std::size_t c = 0; c < num_categories; ++c) {
    if (counts[c] == 0) throw ConfigError("category " + std::to_string(c) + " has no training documents");
    auto row = std::span<double>(sums).subspan(c * dimension, dimension);
    double sq = 0.0;
    for (double& x : row) {
      x /= static_cast<double>(counts[c]);
      sq += x * x;
    }
    if (sq > 0.0) {
      const double norm = std::sqrt(sq);
      for (double& x : row) x /= norm;
    }
  }
  return CentroidModel(std::move(sums), num_categories, dimension);
}

std::vector<double> CentroidModel::similarities(const WeightedVector& query) const {
  std::vector<double> out(num_categories_, 0.0);
  const double norm = l2_norm(query.entries);
  if (norm == 0.0) return out;
  for (CategoryId c = 0; c < num_categories_; ++c) out[c] = dot_dense(query.entries, centroid(c)) / norm;
  return out;
}

Prediction CentroidModel::classify(const WeightedVector& query) const {
  if (l2_norm(query.entries) == 0.0) return {0, true};
  const auto sims = similarities(query);
  CategoryId best = 0;
  for (CategoryId c = 1; c < num_categories_; ++c) {
    if (sims[c] > sims[best]) best = c;
  }
  return {best, false};
}

// ---------------------------------------------------------------- SVM

LinearSvmModel svm_train(std::span<const WeightedVector> vectors, std::span<const Polarity> labels,
                         std::size_t dimension, const SvmOptions& options, SvmTrace* trace) {
  if (vectors.size() != labels.size()) throw ConsistencyError("SVM vectors and labels differ in length");
  if (!(options.c > 0.0)) throw ConfigError("SVM penalty C must be > 0");
  const bool has_pos = std::find(labels.begin(), labels.end(), Polarity::Positive) != labels.end();
  const bool has_neg = std::find(labels.begin(), labels.end(), Polarity::Negative) != labels.end();
  if (!has_pos || !has_neg) throw ConfigError("SVM training needs both positive and negative examples");

  const std::size_t l = vectors.size();
  const double upper = options.c;
  const double bias_x = options.bias_feature;
  // w[dimension] is the bias weight.
  std::vector<double> w(dimension + 1, 0.0);
  std::vector<double> alpha(l, 0.0);
  std::vector<double> qd(l, 0.0);
  std::vector<std::size_t> index(l);
  for (std::size_t i = 0; i < l; ++i) {
    for (const Entry& e : vectors[i].entries) {
      if (e.term >= dimension) throw ConsistencyError("term id outside SVM dimension");
      qd[i] += e.value * e.value;
    }
    qd[i] += bias_x * bias_x;
    index[i] = i;
  }

  auto dot_w = [&](std::size_t i) {
    return dot_dense(vectors[i].entries, std::span<const double>(w).first(dimension)) + w[dimension] * bias_x;
  };
  auto axpy = [&](double scale, std::size_t i) {
    for (const Entry& e : vectors[i].entries) w[e.term] += scale * e.value;
    w[dimension] += scale * bias_x;
  };
  auto dual_objective = [&] {
    double v = 0.0;
    for (double x : w) v += x * x;
    double sum_alpha = 0.0;
    for (double a : alpha) sum_alpha += a;
    return 0.5 * v - sum_alpha;
  };

  Rng rng(options.seed);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::size_t active_size = l;
  double pg_max_old = kInf;
  double pg_min_old = -kInf;
  std::size_t epoch = 0;
  bool converged = false;
  if (trace) trace->dual_objective.clear();

  while (epoch < options.max_epochs) {
    double pg_max_new = -kInf;
    double pg_min_new = kInf;

    for (std::size_t i = 0; i < active_size; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(active_size - i));
      std::swap(index[i], index[j]);
    }

    for (std::size_t s = 0; s < active_size; ++s) {
      const std::size_t i = index[s];
      const double yi = sign_of(labels[i]);
      const double g = yi * dot_w(i) - 1.0;

      double pg = 0.0;
      if (alpha[i] == 0.0) {
        if (g > pg_max_old) {
          --active_size;
          std::swap(index[s], index[active_size]);
          --s;
          continue;
        }
        if (g < 0.0) pg = g;
      } else if (alpha[i] == upper) {
        if (g < pg_min_old) {
          --active_size;
          std::swap(index[s], index[active_size]);
          --s;
          continue;
        }
        if (g > 0.0) pg = g;
      } else {
        pg = g;
      }

      pg_max_new = std::max(pg_max_new, pg);
      pg_min_new = std::min(pg_min_new, pg);

      if (std::fabs(pg) > 1e-12 && qd[i] > 0.0) {
        const double old = alpha[i];
        alpha[i] = std::min(std::max(old - g / qd[i], 0.0), upper);
        axpy((alpha[i] - old) * yi, i);
      }
    }

    ++epoch;
    if (trace) trace->dual_objective.push_back(dual_objective());

    if (pg_max_new - pg_min_new <= options.tolerance) {
      if (active_size == l) {
        converged = true;
        break;
      }
      // Re-check the shrunk variables before declaring convergence.
      active_size = l;
      pg_max_old = kInf;
      pg_min_old = -kInf;
      continue;
    }
    pg_max_old = pg_max_new <= 0.0 ? kInf : pg_max_new;
    pg_min_old = pg_min_new >= 0.0 ? -kInf : pg_min_new;
  }

  if (trace) {
    trace->epochs = epoch;
    trace->converged = converged;
    trace->alpha = alpha;
  }

  LinearSvmModel model;
  model.bias = w[dimension] * bias_x;
  w.resize(dimension);
  model.weights = std::move(w);
  model.c = options.c;
  for (double x : model.weights) {
    if (!std::isfinite(x)) throw ConsistencyError("SVM produced a non-finite weight");
  }
  return model;
}

SvmDecision svm_classify(const LinearSvmModel& model, const WeightedVector& query) {
  const double value = model.decision_value(query);
  return {value > 0.0 ? Polarity::Positive : Polarity::Negative, value};
}

OneVsRestSvm OneVsRestSvm::train(std::span<const WeightedVector> vectors, std::span<const CategoryId> labels,
                                 std::size_t num_categories, std::size_t dimension, const SvmOptions& options) {
  std::vector<std::size_t> counts(num_categories, 0);
  for (CategoryId c : labels) {
    if (c >= num_categories) throw ConsistencyError("SVM label out of range");
    ++counts[c];
  }
  std::vector<LinearSvmModel> models;
  std::vector<CategoryId> categories;
  std::vector<Polarity> binary(labels.size());
  for (CategoryId c = 0; c < num_categories; ++c) {
    if (counts[c] == 0) continue;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      binary[i] = labels[i] == c ? Polarity::Positive : Polarity::Negative;
    }
    models.push_back(svm_train(vectors, binary, dimension, options));
    categories.push_back(c);
  }
  if (models.size() < 2) throw ConfigError("one-vs-rest SVM needs at least two categories");
  return OneVsRestSvm(std::move(models), std::move(categories));
}

Prediction OneVsRestSvm::classify(const WeightedVector& query) const {
  if (l2_norm(query.entries) == 0.0) return {categories_.front(), true};
  std::size_t best = 0;
  double best_value = models_[0].decision_value(query);
  for (std::size_t m = 1; m < models_.size(); ++m) {
    const double v = models_[m].decision_value(query);
    if (v > best_value) {
      best = m;
      best_value = v;
    }
  }
  return {categories_[best], false};
}

}  // namespace termweight
