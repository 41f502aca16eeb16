#include "termweight/bench.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "termweight/error.hpp"
#include "termweight/random.hpp"

namespace termweight {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::string item = trim(value.substr(start, comma == std::string_view::npos ? value.npos : comma - start));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) throw ConfigError("config key '" + key + "': bad number '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + value + "'");
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::vector<WeightedVector> weigh_all(const TermWeigher& weigher, std::span<const SparseVector> vectors) {
  std::vector<WeightedVector> out;
  out.reserve(vectors.size());
  for (const SparseVector& v : vectors) out.push_back(weigher(v));
  return out;
}

void check_finite(const std::vector<WeightedVector>& vectors, Scheme scheme) {
  for (const WeightedVector& v : vectors) {
    for (const Entry& e : v.entries) {
      if (!std::isfinite(e.value)) {
        throw ConsistencyError("scheme " + std::string(scheme_name(scheme)) + " produced a non-finite weight");
      }
    }
  }
}

const TaskResult* find_trial(const ResultsTable& table, Scheme scheme, ClassifierKind classifier, std::uint64_t seed) {
  for (const TaskResult& t : table.trials) {
    if (t.scheme == scheme && t.classifier == classifier && t.seed == seed) return &t;
  }
  return nullptr;
}

void aggregate(ResultsTable& table, const ClassifierSettings& base_settings) {
  const ExperimentConfig& config = table.config;
  for (Scheme scheme : config.schemes) {
    for (ClassifierKind classifier : config.classifiers) {
      AggregateRow row;
      row.scheme = scheme;
      row.classifier = classifier;
      row.classifier_label = classifier_label(classifier, base_settings);
      for (std::uint64_t seed : config.seeds) {
        const TaskResult* t = find_trial(table, scheme, classifier, seed);
        if (!t) continue;
        row.macro_f1 += t->report.macro_f1;
        row.micro_f1 += t->report.micro_f1;
        row.seeds.push_back(seed);
      }
      if (!row.seeds.empty()) {
        row.macro_f1 /= static_cast<double>(row.seeds.size());
        row.micro_f1 /= static_cast<double>(row.seeds.size());
      }
      table.rows.push_back(std::move(row));
    }
  }
  for (ClassifierKind classifier : config.classifiers) {
    for (std::size_t i = 0; i < config.schemes.size(); ++i) {
      for (std::size_t j = i + 1; j < config.schemes.size(); ++j) {
        for (std::uint64_t seed : config.seeds) {
          const TaskResult* a = find_trial(table, config.schemes[i], classifier, seed);
          const TaskResult* b = find_trial(table, config.schemes[j], classifier, seed);
          if (!a || !b) continue;
          table.significance.push_back(
              {classifier, config.schemes[i], config.schemes[j], seed, mcnemar(a->report.records, b->report.records)});
        }
      }
    }
  }
}

void emit(const LogSink& log, const std::string& line) {
  if (log) log(line);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (corpus.empty()) throw ConfigError("config: 'corpus' is required");
  if (seeds.empty()) throw ConfigError("config: at least one seed is required");
  if (schemes.empty()) throw ConfigError("config: 'schemes' must not be empty");
  if (classifiers.empty()) throw ConfigError("config: 'classifiers' must not be empty");
  if (min_global_count < 1) throw ConfigError("config: min_global_count must be >= 1");
  if (k < 1) throw ConfigError("config: k must be >= 1");
  if (!(svm_c > 0.0)) throw ConfigError("config: svm_c must be > 0");
  std::vector<std::uint64_t> sorted = seeds;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ConfigError("config: seeds must be distinct");
}

ExperimentConfig parse_config(std::istream& in, const fs::path& base_dir) {
  ExperimentConfig config;
  std::optional<std::size_t> trials;
  std::string line;
  std::size_t line_number = 0;
  auto resolve = [&](const std::string& value) {
    fs::path p(value);
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
  };
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_number) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));

    if (key == "corpus") {
      config.corpus = resolve(value);
    } else if (key == "format") {
      config.format = parse_corpus_format(value);
    } else if (key == "corpus_name") {
      config.corpus_name = value;
    } else if (key == "split") {
      config.split = SplitPolicy::parse(value);
    } else if (key == "seeds") {
      config.seeds.clear();
      for (const auto& s : split_list(value)) config.seeds.push_back(parse_number<std::uint64_t>(key, s));
    } else if (key == "trials") {
      trials = parse_number<std::size_t>(key, value);
    } else if (key == "schemes") {
      config.schemes.clear();
      for (const auto& s : split_list(value)) config.schemes.push_back(parse_scheme(s));
    } else if (key == "classifiers") {
      config.classifiers.clear();
      for (const auto& s : split_list(value)) config.classifiers.push_back(parse_classifier(s));
    } else if (key == "normalize") {
      config.normalize = parse_bool(key, value);
    } else if (key == "min_global_count") {
      config.min_global_count = parse_number<std::size_t>(key, value);
    } else if (key == "k") {
      config.k = parse_number<std::size_t>(key, value);
    } else if (key == "svm_c") {
      config.svm_c = parse_number<double>(key, value);
    } else if (key == "stopwords") {
      config.stopwords = resolve(value);
    } else if (key == "output_dir") {
      config.output_dir = resolve(value);
    } else {
      throw ConfigError("config line " + std::to_string(line_number) + ": unknown key '" + key + "'");
    }
  }
  if (config.output_dir == "out" && !base_dir.empty()) config.output_dir = base_dir / "out";
  if (trials && *trials != config.seeds.size()) {
    throw ConfigError("config: trials = " + std::to_string(*trials) + " but " + std::to_string(config.seeds.size()) +
                      " seed(s) listed");
  }
  if (config.corpus_name.empty()) {
    fs::path p = config.corpus;
    if (p.filename().empty()) p = p.parent_path();
    config.corpus_name = p.filename().string();
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  return parse_config(in, path.parent_path());
}

Corpus load_config_corpus(const ExperimentConfig& config) {
  const StopwordSet stopwords = config.stopwords ? load_stopwords(*config.stopwords) : default_stopwords();
  return load_corpus(config.corpus, config.format, stopwords);
}

TrialData prepare_trial(const Corpus& corpus, const SplitPolicy& policy, std::uint64_t seed,
                        std::size_t min_global_count) {
  TrialData trial;
  trial.seed = seed;
  trial.split = split_corpus(corpus, policy, seed);
  trial.vocabulary = Vocabulary::build(corpus, trial.split.train, min_global_count);

  trial.train_vectors.reserve(trial.split.train.size());
  for (std::size_t i : trial.split.train) {
    trial.train_vectors.push_back(vectorize(corpus.documents[i], trial.vocabulary));
    trial.train_labels.push_back(corpus.documents[i].label);
  }
  for (std::size_t i : trial.split.test) {
    trial.test_vectors.push_back(vectorize(corpus.documents[i], trial.vocabulary));
    trial.test_labels.push_back(corpus.documents[i].label);
    trial.test_ids.push_back(corpus.documents[i].id);
  }
  trial.corpus_stats = make_corpus_stats(trial.train_labels, corpus.num_categories(), trial.vocabulary.size());
  trial.term_stats = TermStats::build(trial.train_vectors, trial.train_labels, trial.corpus_stats);
  return trial;
}

std::uint64_t training_fingerprint(const TrialData& trial) {
  Fnv1a h;
  h.u64(trial.vocabulary.size());
  for (const std::string& term : trial.vocabulary.terms()) h.str(term);
  h.u64(trial.corpus_stats.num_train_docs);
  for (std::size_t n : trial.corpus_stats.docs_per_category) h.u64(n);
  for (TermId t = 0; t < trial.term_stats.vocab_size(); ++t) {
    h.u64(trial.term_stats.df(t));
    h.u64(trial.term_stats.cf(t));
    for (std::uint32_t n : trial.term_stats.per_category_df(t)) h.u64(n);
  }
  for (std::size_t i = 0; i < trial.train_vectors.size(); ++i) {
    h.u64(trial.train_labels[i]);
    for (const Entry& e : trial.train_vectors[i].entries) {
      h.u64(e.term);
      h.f64(e.value);
    }
  }
  return h.value();
}

std::string classifier_label(ClassifierKind kind, const ClassifierSettings& settings) {
  switch (kind) {
    case ClassifierKind::Knn: return "knn(k=" + std::to_string(settings.k) + ")";
    case ClassifierKind::Centroid: return "centroid";
    case ClassifierKind::Svm: return "svm(linear,C=" + format_number(settings.svm_c) + ")";
  }
  return "?";
}

std::vector<CategoryId> train_and_predict(ClassifierKind kind, const ClassifierSettings& settings,
                                          std::span<const WeightedVector> train, std::span<const CategoryId> train_labels,
                                          std::span<const WeightedVector> test, std::size_t num_categories,
                                          std::size_t dimension, std::size_t* fallbacks) {
  // Compact ids over the categories that have training documents.
  constexpr CategoryId kNone = ~CategoryId{0};
  std::vector<CategoryId> compact(num_categories, kNone);
  std::vector<CategoryId> original;
  std::vector<CategoryId> labels(train_labels.size());
  for (CategoryId c : train_labels) {
    if (c >= num_categories) throw ConsistencyError("training label out of range");
    compact[c] = 0;
  }
  for (CategoryId c = 0; c < num_categories; ++c) {
    if (compact[c] != kNone) {
      compact[c] = static_cast<CategoryId>(original.size());
      original.push_back(c);
    }
  }
  for (std::size_t i = 0; i < train_labels.size(); ++i) labels[i] = compact[train_labels[i]];

  std::vector<CategoryId> predicted;
  predicted.reserve(test.size());
  std::size_t fallback_count = 0;
  auto record = [&](const Prediction& p) {
    predicted.push_back(original[p.label]);
    fallback_count += p.fallback ? 1 : 0;
  };

  switch (kind) {
    case ClassifierKind::Knn: {
      KnnModel model(std::vector<WeightedVector>(train.begin(), train.end()), labels, settings.k);
      for (const WeightedVector& q : test) record(model.classify(q));
      break;
    }
    case ClassifierKind::Centroid: {
      const auto model = CentroidModel::train(train, labels, original.size(), dimension);
      for (const WeightedVector& q : test) record(model.classify(q));
      break;
    }
    case ClassifierKind::Svm: {
      SvmOptions options;
      options.c = settings.svm_c;
      options.seed = settings.seed;
      const auto model = OneVsRestSvm::train(train, labels, original.size(), dimension, options);
      for (const WeightedVector& q : test) record(model.classify(q));
      break;
    }
  }
  if (fallbacks) *fallbacks += fallback_count;
  return predicted;
}

ResultsTable run_multiclass(const ExperimentConfig& config, const Corpus& corpus, const LogSink& log) {
  config.validate();
  for (Scheme s : config.schemes) {
    if (is_supervised(s)) {
      throw ConfigError("scheme '" + std::string(scheme_name(s)) +
                        "' is supervised; multi-class runs accept tf, idf, tfidf and tficf only");
    }
  }
  ResultsTable table;
  table.protocol = Protocol::Multiclass;
  table.config = config;
  if (corpus.empty_documents > 0) {
    table.warnings.push_back(std::to_string(corpus.empty_documents) + " document(s) have no tokens");
    emit(log, "warning: " + table.warnings.back());
  }

  const std::size_t num_categories = corpus.num_categories();
  for (std::uint64_t seed : config.seeds) {
    const TrialData trial = prepare_trial(corpus, config.split, seed, config.min_global_count);
    emit(log, "trial seed=" + std::to_string(seed) + ": " + std::to_string(trial.train_vectors.size()) + " train, " +
                  std::to_string(trial.test_vectors.size()) + " test, |V|=" + std::to_string(trial.vocabulary.size()));
    for (Scheme scheme : config.schemes) {
      const TermWeigher weigher(scheme, trial.term_stats, trial.corpus_stats, std::nullopt,
                                {.normalize = config.normalize});
      const auto train_w = weigh_all(weigher, trial.train_vectors);
      const auto test_w = weigh_all(weigher, trial.test_vectors);
      check_finite(train_w, scheme);
      check_finite(test_w, scheme);
      for (ClassifierKind classifier : config.classifiers) {
        const auto start = std::chrono::steady_clock::now();
        const ClassifierSettings settings{config.k, config.svm_c, seed};
        std::size_t fallbacks = 0;
        const auto predicted = train_and_predict(classifier, settings, train_w, trial.train_labels, test_w,
                                                 num_categories, trial.vocabulary.size(), &fallbacks);
        std::vector<PredictionRecord> records;
        records.reserve(predicted.size());
        for (std::size_t i = 0; i < predicted.size(); ++i) {
          records.push_back({trial.test_ids[i], trial.test_labels[i], predicted[i]});
        }
        TaskResult result;
        result.scheme = scheme;
        result.classifier = classifier;
        result.seed = seed;
        result.report = multiclass_scores(records, num_categories);
        for (std::size_t c = 0; c < num_categories; ++c) result.report.per_category[c].name = corpus.categories[c];
        result.report.meta = {std::string(scheme_name(scheme)), classifier_label(classifier, settings), seed,
                              config.corpus_name};
        result.duration = std::chrono::steady_clock::now() - start;
        if (fallbacks > 0) {
          table.warnings.push_back(std::string(scheme_name(scheme)) + "/" + std::string(classifier_name(classifier)) +
                                   " seed " + std::to_string(seed) + ": " + std::to_string(fallbacks) +
                                   " zero-vector quer(ies) got the fallback label");
          emit(log, "warning: " + table.warnings.back());
        }
        emit(log, "  " + std::string(scheme_name(scheme)) + " " + result.report.meta.classifier +
                      " macro_f1=" + format_double(result.report.macro_f1) +
                      " micro_f1=" + format_double(result.report.micro_f1) + " (" +
                      format_double(result.duration.count()) + " s)");
        table.trials.push_back(std::move(result));
      }
    }
  }
  aggregate(table, {config.k, config.svm_c, 0});
  return table;
}

ResultsTable run_multiclass(const ExperimentConfig& config, const LogSink& log) {
  return run_multiclass(config, load_config_corpus(config), log);
}

ResultsTable run_binary_local(const ExperimentConfig& config, const Corpus& corpus, const LogSink& log) {
  config.validate();
  ResultsTable table;
  table.protocol = Protocol::BinaryLocal;
  table.config = config;
  if (corpus.empty_documents > 0) {
    table.warnings.push_back(std::to_string(corpus.empty_documents) + " document(s) have no tokens");
    emit(log, "warning: " + table.warnings.back());
  }

  const std::size_t num_categories = corpus.num_categories();
  for (std::uint64_t seed : config.seeds) {
    const TrialData trial = prepare_trial(corpus, config.split, seed, config.min_global_count);
    const std::size_t dimension = trial.vocabulary.size();
    emit(log, "trial seed=" + std::to_string(seed) + ": " + std::to_string(trial.train_vectors.size()) + " train, " +
                  std::to_string(trial.test_vectors.size()) + " test, |V|=" + std::to_string(dimension));

    std::vector<CategoryId> positives;
    for (CategoryId c = 0; c < num_categories; ++c) {
      if (trial.corpus_stats.docs_per_category[c] == 0) {
        table.warnings.push_back("category '" + corpus.categories[c] + "' has no training documents (seed " +
                                 std::to_string(seed) + "); binary task skipped");
        emit(log, "warning: " + table.warnings.back());
        continue;
      }
      positives.push_back(c);
    }

    for (Scheme scheme : config.schemes) {
      // Unsupervised weights do not depend on the positive category.
      std::optional<std::pair<std::vector<WeightedVector>, std::vector<WeightedVector>>> shared;
      if (!is_supervised(scheme)) {
        const TermWeigher weigher(scheme, trial.term_stats, trial.corpus_stats, std::nullopt,
                                  {.normalize = config.normalize});
        shared.emplace(weigh_all(weigher, trial.train_vectors), weigh_all(weigher, trial.test_vectors));
      }

      struct Accumulator {
        std::vector<BinaryCounts> tasks;
        std::vector<CategoryScore> scores;
        std::vector<PredictionRecord> records;
        std::chrono::duration<double> duration{};
      };
      std::vector<Accumulator> acc(config.classifiers.size());

      for (CategoryId positive : positives) {
        std::vector<WeightedVector> own_train;
        std::vector<WeightedVector> own_test;
        if (!shared) {
          const TermWeigher weigher(scheme, trial.term_stats, trial.corpus_stats, positive,
                                    {.normalize = config.normalize});
          own_train = weigh_all(weigher, trial.train_vectors);
          own_test = weigh_all(weigher, trial.test_vectors);
        }
        const auto& train_w = shared ? shared->first : own_train;
        const auto& test_w = shared ? shared->second : own_test;
        check_finite(train_w, scheme);
        check_finite(test_w, scheme);

        std::vector<CategoryId> train_binary(trial.train_labels.size());
        std::vector<Polarity> train_polarity(trial.train_labels.size());
        std::size_t positive_train = 0;
        for (std::size_t i = 0; i < train_binary.size(); ++i) {
          const bool pos = trial.train_labels[i] == positive;
          train_binary[i] = pos ? 1 : 0;
          train_polarity[i] = pos ? Polarity::Positive : Polarity::Negative;
          positive_train += pos ? 1 : 0;
        }
        if (positive_train != trial.corpus_stats.docs_per_category[positive]) {
          throw ConsistencyError("binary task margins disagree with corpus statistics");
        }

        for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
          const ClassifierKind classifier = config.classifiers[ci];
          const auto start = std::chrono::steady_clock::now();
          const ClassifierSettings settings{config.k, config.svm_c, seed};
          std::vector<CategoryId> predicted;
          if (classifier == ClassifierKind::Svm) {
            SvmOptions options;
            options.c = config.svm_c;
            options.seed = seed;
            const LinearSvmModel model = svm_train(train_w, train_polarity, dimension, options);
            for (const WeightedVector& q : test_w) {
              predicted.push_back(svm_classify(model, q).polarity == Polarity::Positive ? 1 : 0);
            }
          } else {
            predicted = train_and_predict(classifier, settings, train_w, train_binary, test_w, 2, dimension);
          }

          std::vector<PredictionRecord> records;
          records.reserve(predicted.size());
          for (std::size_t i = 0; i < predicted.size(); ++i) {
            records.push_back({corpus.categories[positive] + "|" + trial.test_ids[i],
                               trial.test_labels[i] == positive ? 1u : 0u, predicted[i]});
          }
          const BinaryCounts counts = binary_counts(records);
          CategoryScore score;
          score.name = corpus.categories[positive];
          score.tp = counts.tp;
          score.fp = counts.fp;
          score.fn = counts.fn;
          score.support = counts.tp + counts.fn;
          score.precision = counts.tp + counts.fp == 0 ? 0.0 : double(counts.tp) / double(counts.tp + counts.fp);
          score.recall = score.support == 0 ? 0.0 : double(counts.tp) / double(score.support);
          score.f1 = counts.f1();

          Accumulator& a = acc[ci];
          a.tasks.push_back(counts);
          a.scores.push_back(std::move(score));
          a.records.insert(a.records.end(), records.begin(), records.end());
          a.duration += std::chrono::steady_clock::now() - start;
        }
      }

      for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
        const ClassifierSettings settings{config.k, config.svm_c, seed};
        TaskResult result;
        result.scheme = scheme;
        result.classifier = config.classifiers[ci];
        result.seed = seed;
        const PooledScores pooled = binary_pooled_scores(acc[ci].tasks);
        result.report.macro_f1 = pooled.macro_f1;
        result.report.micro_f1 = pooled.micro_f1;
        result.report.per_category = std::move(acc[ci].scores);
        result.report.records = std::move(acc[ci].records);
        result.report.meta = {std::string(scheme_name(scheme)), classifier_label(result.classifier, settings), seed,
                              config.corpus_name};
        result.tasks = std::move(acc[ci].tasks);
        result.duration = acc[ci].duration;
        emit(log, "  " + std::string(scheme_name(scheme)) + " " + result.report.meta.classifier +
                      " macro_f1=" + format_double(result.report.macro_f1) +
                      " micro_f1=" + format_double(result.report.micro_f1) + " (" +
                      format_double(result.duration.count()) + " s)");
        table.trials.push_back(std::move(result));
      }
    }
  }
  aggregate(table, {config.k, config.svm_c, 0});
  return table;
}

ResultsTable run_binary_local(const ExperimentConfig& config, const LogSink& log) {
  return run_binary_local(config, load_config_corpus(config), log);
}

void write_results_csv(std::ostream& out, const ResultsTable& table) {
  out << "scheme,classifier,macro_f1,micro_f1,seed,corpus\n";
  for (const AggregateRow& row : table.rows) {
    out << scheme_name(row.scheme) << ',' << '"' << row.classifier_label << '"' << ',' << format_double(row.macro_f1)
        << ',' << format_double(row.micro_f1) << ',';
    for (std::size_t i = 0; i < row.seeds.size(); ++i) {
      if (i) out << ';';
      out << row.seeds[i];
    }
    out << ',' << table.config.corpus_name << '\n';
  }
}

void write_significance_csv(std::ostream& out, const ResultsTable& table) {
  out << "classifier,scheme_a,scheme_b,seed,n01,n10,statistic,significant_at_0.01\n";
  for (const SignificanceRow& row : table.significance) {
    out << classifier_name(row.classifier) << ',' << scheme_name(row.scheme_a) << ',' << scheme_name(row.scheme_b)
        << ',' << row.seed << ',' << row.test.n01 << ',' << row.test.n10 << ',' << format_double(row.test.statistic)
        << ',' << (row.test.significant ? "true" : "false") << '\n';
  }
}

nlohmann::json results_to_json(const ResultsTable& table) {
  const ExperimentConfig& c = table.config;
  nlohmann::json config = {
      {"corpus_name", c.corpus_name},
      {"format", corpus_format_name(c.format)},
      {"split", c.split.to_string()},
      {"seeds", c.seeds},
      {"normalize", c.normalize},
      {"min_global_count", c.min_global_count},
      {"k", c.k},
      {"svm_c", c.svm_c},
      {"svm", "linear kernel, one-vs-rest for multi-class, dual coordinate descent"},
      {"rng", Rng::kName},
  };
  nlohmann::json schemes = nlohmann::json::array();
  for (Scheme s : c.schemes) schemes.push_back(scheme_name(s));
  config["schemes"] = schemes;
  nlohmann::json classifiers = nlohmann::json::array();
  for (ClassifierKind k : c.classifiers) classifiers.push_back(classifier_name(k));
  config["classifiers"] = classifiers;

  nlohmann::json rows = nlohmann::json::array();
  for (const AggregateRow& r : table.rows) {
    rows.push_back({{"scheme", scheme_name(r.scheme)},
                    {"classifier", classifier_name(r.classifier)},
                    {"classifier_label", r.classifier_label},
                    {"macro_f1", r.macro_f1},
                    {"micro_f1", r.micro_f1},
                    {"seeds", r.seeds}});
  }
  nlohmann::json trials = nlohmann::json::array();
  for (const TaskResult& t : table.trials) {
    nlohmann::json jt = {{"scheme", scheme_name(t.scheme)},
                         {"classifier", classifier_name(t.classifier)},
                         {"seed", t.seed},
                         {"report", t.report}};
    trials.push_back(std::move(jt));
  }
  nlohmann::json significance = nlohmann::json::array();
  for (const SignificanceRow& s : table.significance) {
    significance.push_back({{"classifier", classifier_name(s.classifier)},
                            {"scheme_a", scheme_name(s.scheme_a)},
                            {"scheme_b", scheme_name(s.scheme_b)},
                            {"seed", s.seed},
                            {"n01", s.test.n01},
                            {"n10", s.test.n10},
                            {"statistic", s.test.statistic},
                            {"significant", s.test.significant}});
  }
  return {{"spec_version", kResultsSchemaVersion},
          {"protocol", table.protocol == Protocol::Multiclass ? "multiclass" : "binary-local"},
          {"config", config},
          {"rows", rows},
          {"significance", significance},
          {"warnings", table.warnings},
          {"trials", trials}};
}

void write_outputs(const ResultsTable& table, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("results.csv");
    write_results_csv(out, table);
  }
  {
    auto out = open("significance.csv");
    write_significance_csv(out, table);
  }
  {
    auto out = open("results.json");
    out << results_to_json(table).dump(2) << '\n';
  }
}

}  // namespace termweight
