#include "termweight/eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

#include "termweight/error.hpp"

namespace termweight {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double counts_f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  // 2pr/(p+r) reduces to 2tp/(2tp+fp+fn).
  const std::size_t den = 2 * tp + fp + fn;
  return den == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(den);
}

}  // namespace

double f1(double precision, double recall) {
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

EvalReport multiclass_scores(std::span<const PredictionRecord> records, std::size_t num_categories) {
  if (records.empty()) throw Error("cannot score an empty record set");
  EvalReport report;
  report.confusion.assign(num_categories, std::vector<std::size_t>(num_categories, 0));
  for (const PredictionRecord& r : records) {
    if (r.truth >= num_categories || r.predicted >= num_categories) {
      throw Error("prediction record '" + r.doc_id + "' has a label outside the category table");
    }
    ++report.confusion[r.truth][r.predicted];
  }

  report.per_category.resize(num_categories);
  std::size_t tp_sum = 0;
  std::size_t fp_sum = 0;
  std::size_t fn_sum = 0;
  double f1_sum = 0.0;
  std::size_t present = 0;
  for (std::size_t c = 0; c < num_categories; ++c) {
    CategoryScore& s = report.per_category[c];
    s.tp = report.confusion[c][c];
    for (std::size_t o = 0; o < num_categories; ++o) {
      if (o == c) continue;
      s.fn += report.confusion[c][o];
      s.fp += report.confusion[o][c];
    }
    s.support = s.tp + s.fn;
    s.precision = ratio(s.tp, s.tp + s.fp);
    s.recall = ratio(s.tp, s.tp + s.fn);
    s.f1 = f1(s.precision, s.recall);
    tp_sum += s.tp;
    fp_sum += s.fp;
    fn_sum += s.fn;
    if (s.support > 0) {
      f1_sum += s.f1;
      ++present;
    }
  }
  report.macro_f1 = present == 0 ? 0.0 : f1_sum / static_cast<double>(present);
  report.micro_f1 = counts_f1(tp_sum, fp_sum, fn_sum);
  report.records.assign(records.begin(), records.end());
  return report;
}

double BinaryCounts::f1() const { return counts_f1(tp, fp, fn); }

BinaryCounts binary_counts(std::span<const PredictionRecord> records) {
  BinaryCounts counts;
  for (const PredictionRecord& r : records) {
    if (r.truth == 1 && r.predicted == 1) ++counts.tp;
    if (r.truth != 1 && r.predicted == 1) ++counts.fp;
    if (r.truth == 1 && r.predicted != 1) ++counts.fn;
  }
  return counts;
}

PooledScores binary_pooled_scores(std::span<const BinaryCounts> tasks) {
  PooledScores out;
  if (tasks.empty()) return out;
  BinaryCounts pooled;
  double f1_sum = 0.0;
  for (const BinaryCounts& t : tasks) {
    f1_sum += t.f1();
    pooled.tp += t.tp;
    pooled.fp += t.fp;
    pooled.fn += t.fn;
  }
  out.macro_f1 = f1_sum / static_cast<double>(tasks.size());
  out.micro_f1 = pooled.f1();
  return out;
}

McNemarResult mcnemar(std::span<const PredictionRecord> a, std::span<const PredictionRecord> b) {
  if (a.size() != b.size()) throw Error("McNemar: record sets differ in size");
  std::unordered_map<std::string_view, const PredictionRecord*> by_id;
  by_id.reserve(b.size());
  for (const PredictionRecord& r : b) {
    if (!by_id.emplace(r.doc_id, &r).second) throw Error("McNemar: duplicate document '" + r.doc_id + "'");
  }
  McNemarResult result;
  for (const PredictionRecord& ra : a) {
    auto it = by_id.find(ra.doc_id);
    if (it == by_id.end()) throw Error("McNemar: document '" + ra.doc_id + "' missing from second record set");
    const PredictionRecord& rb = *it->second;
    if (ra.truth != rb.truth) throw Error("McNemar: document '" + ra.doc_id + "' has different true labels");
    if (!ra.correct() && rb.correct()) ++result.n01;
    if (ra.correct() && !rb.correct()) ++result.n10;
    by_id.erase(it);
  }
  const std::size_t discordant = result.n01 + result.n10;
  if (discordant > 0) {
    // The continuity correction never exceeds the difference itself.
    const double diff =
        std::max(0.0, std::abs(static_cast<double>(result.n01) - static_cast<double>(result.n10)) - 1.0);
    result.statistic = diff * diff / static_cast<double>(discordant);
  }
  result.significant = result.statistic > kMcNemarCritical;
  return result;
}

void to_json(nlohmann::json& j, const PredictionRecord& r) {
  j = nlohmann::json{{"doc_id", r.doc_id}, {"truth", r.truth}, {"predicted", r.predicted}};
}

void from_json(const nlohmann::json& j, PredictionRecord& r) {
  j.at("doc_id").get_to(r.doc_id);
  j.at("truth").get_to(r.truth);
  j.at("predicted").get_to(r.predicted);
}

void to_json(nlohmann::json& j, const CategoryScore& s) {
  j = nlohmann::json{{"name", s.name},           {"tp", s.tp},         {"fp", s.fp}, {"fn", s.fn},
                     {"support", s.support},     {"precision", s.precision}, {"recall", s.recall},
                     {"f1", s.f1}};
}

void from_json(const nlohmann::json& j, CategoryScore& s) {
  j.at("name").get_to(s.name);
  j.at("tp").get_to(s.tp);
  j.at("fp").get_to(s.fp);
  j.at("fn").get_to(s.fn);
  j.at("support").get_to(s.support);
  j.at("precision").get_to(s.precision);
  j.at("recall").get_to(s.recall);
  j.at("f1").get_to(s.f1);
}

void to_json(nlohmann::json& j, const ExperimentMeta& m) {
  j = nlohmann::json{{"scheme", m.scheme}, {"classifier", m.classifier}, {"seed", m.seed}, {"corpus", m.corpus}};
}

void from_json(const nlohmann::json& j, ExperimentMeta& m) {
  j.at("scheme").get_to(m.scheme);
  j.at("classifier").get_to(m.classifier);
  j.at("seed").get_to(m.seed);
  j.at("corpus").get_to(m.corpus);
}

void to_json(nlohmann::json& j, const EvalReport& r) {
  j = nlohmann::json{{"meta", r.meta},           {"macro_f1", r.macro_f1}, {"micro_f1", r.micro_f1},
                     {"per_category", r.per_category}, {"confusion", r.confusion}, {"records", r.records}};
}

void from_json(const nlohmann::json& j, EvalReport& r) {
  j.at("meta").get_to(r.meta);
  j.at("macro_f1").get_to(r.macro_f1);
  j.at("micro_f1").get_to(r.micro_f1);
  j.at("per_category").get_to(r.per_category);
  j.at("confusion").get_to(r.confusion);
  j.at("records").get_to(r.records);
}

}  // namespace termweight
