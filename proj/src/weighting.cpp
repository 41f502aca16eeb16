#include "termweight/weighting.hpp"

#include <array>
#include <cmath>
#include <string>

#include "termweight/error.hpp"

namespace termweight {

namespace {

constexpr std::array kSchemes = {Scheme::Tf,      Scheme::Idf,    Scheme::TfIdf, Scheme::TfIcf,
                                 Scheme::TfRf,    Scheme::ProbBased, Scheme::TfLogOr, Scheme::TfChi2,
                                 Scheme::TfGr,    Scheme::TfIg,   Scheme::IcfBased};

double log_in_base(double x, double base) { return std::log(x) / std::log(base); }

// p * log2(p / q), with 0 log 0 = 0.
double mi_term(double joint, double marginal_product) {
  if (joint <= 0.0) return 0.0;
  return joint * std::log2(joint / marginal_product);
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Tf: return "tf";
    case Scheme::Idf: return "idf";
    case Scheme::TfIdf: return "tfidf";
    case Scheme::TfIcf: return "tficf";
    case Scheme::TfRf: return "tfrf";
    case Scheme::ProbBased: return "prob";
    case Scheme::TfLogOr: return "tflogor";
    case Scheme::TfChi2: return "tfchi2";
    case Scheme::TfGr: return "tfgr";
    case Scheme::TfIg: return "tfig";
    case Scheme::IcfBased: return "icfbased";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : kSchemes) {
    if (scheme_name(s) == name) return s;
  }
  throw ConfigError("unknown weighting scheme '" + std::string(name) +
                    "' (expected one of tf, idf, tfidf, tficf, tfrf, prob, tflogor, tfchi2, tfgr, tfig, icfbased)");
}

std::span<const Scheme> all_schemes() { return kSchemes; }

bool is_supervised(Scheme scheme) {
  switch (scheme) {
    case Scheme::Tf:
    case Scheme::Idf:
    case Scheme::TfIdf:
    case Scheme::TfIcf: return false;
    default: return true;
  }
}

double idf(TermId term, const TermStats& stats, const CorpusStats& corpus, double log_base) {
  const std::uint32_t df = stats.df(term);
  if (df == 0) return 0.0;
  return log_in_base(static_cast<double>(corpus.num_train_docs) / df, log_base);
}

double icf(TermId term, const TermStats& stats, const CorpusStats& corpus, double log_base) {
  const std::uint32_t cf = stats.cf(term);
  if (cf == 0) throw ConsistencyError("icf of term " + std::to_string(term) + " with cf = 0");
  return log_in_base(static_cast<double>(corpus.num_categories()) / cf, log_base);
}

double rf(const ContingencyTable& t) {
  return std::log2(2.0 + static_cast<double>(t.a) / static_cast<double>(std::max<std::uint64_t>(1, t.c)));
}

double icf_based_factor(const ContingencyTable& t, std::size_t num_categories, std::uint32_t cf) {
  if (cf == 0) throw ConsistencyError("icf-based factor with cf = 0");
  const double ratio = static_cast<double>(t.a) / static_cast<double>(std::max<std::uint64_t>(1, t.c));
  return std::log2(2.0 + ratio * static_cast<double>(num_categories) / cf);
}

double prob_factor(const ContingencyTable& t) {
  const double a = static_cast<double>(t.a);
  return std::log(1.0 + a / static_cast<double>(std::max<std::uint64_t>(1, t.c)) *
                            (a / static_cast<double>(std::max<std::uint64_t>(1, t.b))));
}

double feature_score(FeatureScore kind, const ContingencyTable& t) {
  const double a = static_cast<double>(t.a);
  const double b = static_cast<double>(t.b);
  const double c = static_cast<double>(t.c);
  const double d = static_cast<double>(t.d);
  const double n = a + b + c + d;
  if (n <= 0.0) return 0.0;

  switch (kind) {
    case FeatureScore::Chi2: {
      const double denom = (a + c) * (b + d) * (a + b) * (c + d);
      if (denom == 0.0) return 0.0;
      const double diff = a * d - b * c;
      return n * diff * diff / denom;
    }
    case FeatureScore::LogOddsRatio: {
      const double ad = a * d;
      if (ad == 0.0) return 0.0;
      return std::max(0.0, std::log2(ad / std::max(1.0, b * c)));
    }
    case FeatureScore::InfoGain:
    case FeatureScore::GainRatio: {
      const double p_t = (a + c) / n;
      const double p_pos = (a + b) / n;
      double ig = mi_term(a / n, p_t * p_pos) + mi_term(b / n, (1 - p_t) * p_pos) +
                  mi_term(c / n, p_t * (1 - p_pos)) + mi_term(d / n, (1 - p_t) * (1 - p_pos));
      ig = std::max(0.0, ig);
      if (kind == FeatureScore::InfoGain) return ig;
      const double h = binary_entropy(p_pos);
      return h > 0.0 ? ig / h : 0.0;
    }
  }
  return 0.0;
}

WeightedVector normalize(WeightedVector v) {
  const double norm = l2_norm(v.entries);
  if (norm > 0.0) {
    for (Entry& e : v.entries) e.value /= norm;
  }
  v.normalized = true;
  return v;
}

TermWeigher::TermWeigher(Scheme scheme, const TermStats& stats, const CorpusStats& corpus,
                         std::optional<CategoryId> positive, WeightingOptions options)
    : scheme_(scheme), options_(options), factors_(stats.vocab_size(), 1.0) {
  if (is_supervised(scheme)) {
    if (!positive) {
      throw ConfigError("scheme '" + std::string(scheme_name(scheme)) + "' is supervised and needs a positive category");
    }
    if (*positive >= corpus.docs_per_category.size() || corpus.docs_per_category[*positive] == 0) {
      throw ConfigError("positive category " + std::to_string(*positive) + " has no training documents");
    }
  }
  if (!(options.log_base > 0.0 && options.log_base != 1.0)) throw ConfigError("log base must be positive and != 1");

  const std::size_t num_categories = corpus.num_categories();
  for (TermId t = 0; t < factors_.size(); ++t) {
    double f = 1.0;
    switch (scheme) {
      case Scheme::Tf: break;
      case Scheme::Idf:
      case Scheme::TfIdf: f = idf(t, stats, corpus, options.log_base); break;
      case Scheme::TfIcf: {
        const std::uint32_t cf = stats.cf(t);
        f = cf == 0 ? 0.0 : log_in_base(1.0 + static_cast<double>(num_categories) / cf, options.log_base);
        break;
      }
      case Scheme::TfRf: f = rf(contingency(t, *positive, stats, corpus)); break;
      case Scheme::ProbBased: f = prob_factor(contingency(t, *positive, stats, corpus)); break;
      case Scheme::TfLogOr:
        f = feature_score(FeatureScore::LogOddsRatio, contingency(t, *positive, stats, corpus));
        break;
      case Scheme::TfChi2: f = feature_score(FeatureScore::Chi2, contingency(t, *positive, stats, corpus)); break;
      case Scheme::TfGr: f = feature_score(FeatureScore::GainRatio, contingency(t, *positive, stats, corpus)); break;
      case Scheme::TfIg: f = feature_score(FeatureScore::InfoGain, contingency(t, *positive, stats, corpus)); break;
      case Scheme::IcfBased: {
        const std::uint32_t cf = stats.cf(t);
        // cf == 0 only for a term with no training occurrence, where a = 0.
        f = cf == 0 ? 1.0 : icf_based_factor(contingency(t, *positive, stats, corpus), num_categories, cf);
        break;
      }
    }
    factors_[t] = f;
  }
}

WeightedVector TermWeigher::operator()(const SparseVector& v) const {
  WeightedVector out;
  out.entries.reserve(v.entries.size());
  const double tf_scale = scheme_ == Scheme::ProbBased ? 1.0 / std::max(1.0, v.max_tf) : 1.0;
  for (const Entry& e : v.entries) {
    if (e.term >= factors_.size()) continue;
    const double tf = scheme_ == Scheme::Idf ? (e.value > 0.0 ? 1.0 : 0.0) : e.value * tf_scale;
    const double w = tf * factors_[e.term];
    if (w != 0.0) out.entries.push_back({e.term, w});
  }
  if (options_.normalize) return normalize(std::move(out));
  return out;
}

WeightedVector weigh(const SparseVector& vector, Scheme scheme, const WeightingBindings& bindings,
                     WeightingOptions options) {
  if (!bindings.stats || !bindings.corpus) throw ConfigError("weighting requires TermStats and CorpusStats");
  return TermWeigher(scheme, *bindings.stats, *bindings.corpus, bindings.positive, options)(vector);
}

WeightedVector weigh_tficf(const SparseVector& vector, const TermStats& stats, const CorpusStats& corpus) {
  return TermWeigher(Scheme::TfIcf, stats, corpus, std::nullopt, {.normalize = false})(vector);
}

WeightedVector weigh_icf_based(const SparseVector& vector, CategoryId positive, const TermStats& stats,
                               const CorpusStats& corpus) {
  return TermWeigher(Scheme::IcfBased, stats, corpus, positive, {.normalize = false})(vector);
}

WeightedVector weigh_prob_based(const SparseVector& vector, CategoryId positive, const TermStats& stats,
                                const CorpusStats& corpus) {
  return TermWeigher(Scheme::ProbBased, stats, corpus, positive, {.normalize = false})(vector);
}

}  // namespace termweight
