#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "termweight/corpus.hpp"
#include "termweight/sparse.hpp"
#include "termweight/stats.hpp"

namespace termweight {

enum class Scheme {
  Tf,         ///< raw tf
  Idf,        ///< idf with tf replaced by term presence
  TfIdf,      ///< tf * log(|Tr| / df)
  TfIcf,      ///< tf * log(1 + |C| / cf)
  TfRf,       ///< tf * log2(2 + a / max(1, c))
  ProbBased,  ///< tf / max_tf * ln(1 + a/c * a/b)
  TfLogOr,    ///< tf * log odds ratio
  TfChi2,     ///< tf * chi-square
  TfGr,       ///< tf * gain ratio
  TfIg,       ///< tf * information gain
  IcfBased,   ///< tf * log2(2 + a / max(1, c) * |C| / cf)
};

/// Canonical lowercase names: tf, idf, tfidf, tficf, tfrf, prob, tflogor,
/// tfchi2, tfgr, tfig, icfbased.
std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);
std::span<const Scheme> all_schemes();

/// Supervised schemes need a positive category; the rest need TermStats only.
bool is_supervised(Scheme scheme);

struct WeightingOptions {
  /// L2-normalize every weighted vector.
  bool normalize = true;
  /// Base of the logarithm in idf, icf and tf.icf. The rf-style factors use
  /// base 2 and prob-based uses base e regardless.
  double log_base = 2.0;
};

/// log(|Tr| / df); 0 for a term never seen in training.
double idf(TermId term, const TermStats& stats, const CorpusStats& corpus, double log_base = 2.0);

/// log(|C| / cf). Throws ConsistencyError when cf == 0.
double icf(TermId term, const TermStats& stats, const CorpusStats& corpus, double log_base = 2.0);

/// log2(2 + a / max(1, c)).
double rf(const ContingencyTable& table);

/// log2(2 + a / max(1, c) * |C| / cf). cf must be >= 1.
double icf_based_factor(const ContingencyTable& table, std::size_t num_categories, std::uint32_t cf);

/// ln(1 + a / max(1, c) * a / max(1, b)).
double prob_factor(const ContingencyTable& table);

enum class FeatureScore { Chi2, InfoGain, GainRatio, LogOddsRatio };

/// Contingency-table feature scores with N = a + b + c + d:
///   chi2  = N (ad - bc)^2 / ((a+c)(b+d)(a+b)(c+d)), 0 when a margin is 0
///   ig    = mutual information (bits) of term presence and category membership
///   gr    = ig / H(category indicator), 0 when H = 0
///   logOR = max(0, log2(ad / max(1, bc))), 0 when ad = 0
double feature_score(FeatureScore kind, const ContingencyTable& table);

/// Dividing every entry by the L2 norm; the zero vector is returned unchanged.
WeightedVector normalize(WeightedVector vector);

/// Precomputes one multiplicative factor per term for a scheme and applies
/// it to raw-tf vectors. Supervised schemes are bound to one positive
/// category and use training statistics only.
class TermWeigher {
 public:
  /// Throws ConfigError for a supervised scheme without a positive category.
  TermWeigher(Scheme scheme, const TermStats& stats, const CorpusStats& corpus,
              std::optional<CategoryId> positive = std::nullopt, WeightingOptions options = {});

  WeightedVector operator()(const SparseVector& vector) const;

  Scheme scheme() const { return scheme_; }
  double factor(TermId term) const { return factors_.at(term); }
  const WeightingOptions& options() const { return options_; }

 private:
  Scheme scheme_;
  WeightingOptions options_;
  std::vector<double> factors_;
};

struct WeightingBindings {
  const TermStats* stats = nullptr;
  const CorpusStats* corpus = nullptr;
  std::optional<CategoryId> positive;
};

WeightedVector weigh(const SparseVector& vector, Scheme scheme, const WeightingBindings& bindings,
                     WeightingOptions options = {});

/// Unnormalized tf * log2(1 + |C| / cf).
WeightedVector weigh_tficf(const SparseVector& vector, const TermStats& stats, const CorpusStats& corpus);

/// Unnormalized tf * log2(2 + a / max(1, c) * |C| / cf) against `positive`.
WeightedVector weigh_icf_based(const SparseVector& vector, CategoryId positive, const TermStats& stats,
                               const CorpusStats& corpus);

/// Unnormalized tf / max(1, max_tf) * ln(1 + a / max(1, c) * a / max(1, b)).
WeightedVector weigh_prob_based(const SparseVector& vector, CategoryId positive, const TermStats& stats,
                                const CorpusStats& corpus);

}  // namespace termweight
