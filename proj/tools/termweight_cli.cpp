// termweight: command-line front end for the term weighting toolkit.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "termweight/bench.hpp"
#include "termweight/classify.hpp"
#include "termweight/corpus.hpp"
#include "termweight/error.hpp"
#include "termweight/eval.hpp"
#include "termweight/io.hpp"
#include "termweight/stats.hpp"
#include "termweight/weighting.hpp"

namespace fs = std::filesystem;
using namespace termweight;

namespace {

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

CategoryId category_index(const std::vector<std::string>& categories, const std::string& name) {
  for (CategoryId c = 0; c < categories.size(); ++c) {
    if (categories[c] == name) return c;
  }
  throw ConfigError("unknown category '" + name + "'");
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string corpus;
  std::string format = "dir";
  std::string split = "stratified:0.33";
  std::uint64_t seed = 1;
  std::string stopwords;
  std::size_t min_count = 1;
  std::string out;
};

int run_ingest(const IngestArgs& a) {
  const StopwordSet stopwords = a.stopwords.empty() ? default_stopwords() : load_stopwords(a.stopwords);
  const Corpus corpus = load_corpus(a.corpus, parse_corpus_format(a.format), stopwords);
  const TrialData trial = prepare_trial(corpus, SplitPolicy::parse(a.split), a.seed, a.min_count);

  fs::create_directories(a.out);
  save_lines(fs::path(a.out) / "categories.txt", corpus.categories);
  save_lines(fs::path(a.out) / "vocab.txt", trial.vocabulary.terms());
  auto dump = [&](const std::vector<std::size_t>& indices, const std::vector<SparseVector>& vectors, const char* name) {
    VectorFile file;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      const Document& d = corpus.documents[indices[i]];
      file.ids.push_back(d.id);
      file.labels.push_back(corpus.categories[d.label]);
      file.vectors.push_back(vectors[i]);
    }
    save_vector_file(fs::path(a.out) / name, file);
  };
  dump(trial.split.train, trial.train_vectors, "train.vec");
  dump(trial.split.test, trial.test_vectors, "test.vec");

  std::cout << corpus.documents.size() << " documents, " << corpus.num_categories() << " categories, "
            << trial.train_vectors.size() << " train / " << trial.test_vectors.size() << " test, |V| = "
            << trial.vocabulary.size() << '\n';
  if (corpus.empty_documents > 0) {
    std::cerr << "warning: " << corpus.empty_documents << " document(s) have no tokens\n";
  }
  return 0;
}

// ----------------------------------------------------------------- stats

int run_stats(const std::string& data, const std::string& out_path) {
  const fs::path dir(data);
  StatsBundle bundle;
  bundle.categories = load_lines(dir / "categories.txt");
  bundle.vocabulary = Vocabulary::from_terms(load_lines(dir / "vocab.txt"));
  const VectorFile train = load_vector_file(dir / "train.vec");
  std::vector<CategoryId> labels;
  for (const std::string& name : train.labels) labels.push_back(category_index(bundle.categories, name));
  bundle.corpus = make_corpus_stats(labels, bundle.categories.size(), bundle.vocabulary.size());
  bundle.terms = TermStats::build(train.vectors, labels, bundle.corpus);
  const fs::path out = out_path.empty() ? dir / "stats.tsv" : fs::path(out_path);
  save_stats_sidecar(out, bundle);
  std::cout << "wrote " << out.string() << " (|Tr| = " << bundle.corpus.num_train_docs
            << ", |C| = " << bundle.corpus.num_categories() << ", |V| = " << bundle.corpus.vocab_size << ")\n";
  return 0;
}

// ----------------------------------------------------------------- weigh

int run_weigh(const std::string& stats_path, const std::string& input, const std::string& scheme_name_arg,
              const std::string& positive, bool no_normalize, const std::string& out) {
  const StatsBundle bundle = load_stats_sidecar(stats_path);
  const Scheme scheme = parse_scheme(scheme_name_arg);
  std::optional<CategoryId> pos;
  if (!positive.empty()) pos = category_index(bundle.categories, positive);
  const TermWeigher weigher(scheme, bundle.terms, bundle.corpus, pos, {.normalize = !no_normalize});

  const VectorFile raw = load_vector_file(input);
  if (raw.weighted) throw ConfigError(input + " is already weighted");
  VectorFile weighted;
  weighted.weighted = true;
  weighted.normalized = !no_normalize;
  weighted.ids = raw.ids;
  weighted.labels = raw.labels;
  for (const SparseVector& v : raw.vectors) {
    WeightedVector w = weigher(v);
    weighted.vectors.push_back({std::move(w.entries), v.max_tf});
  }
  save_vector_file(out, weighted);
  return 0;
}

// ----------------------------------------------------------------- train

struct TrainArgs {
  std::string stats;
  std::string input;
  std::string classifier = "centroid";
  std::string scheme;
  std::string positive;
  std::size_t k = 10;
  double svm_c = 1.0;
  std::uint64_t seed = 1;
  std::string model;
};

int run_train(const TrainArgs& a) {
  const StatsBundle bundle = load_stats_sidecar(a.stats);
  const VectorFile file = load_vector_file(a.input);
  if (!file.weighted) std::cerr << "warning: training on raw (unweighted) vectors\n";
  const auto vectors = file.as_weighted();
  const std::size_t dimension = bundle.vocabulary.size();

  StoredModel stored;
  stored.classifier = parse_classifier(a.classifier);
  stored.scheme = a.scheme;
  stored.categories = bundle.categories;
  stored.dimension = dimension;

  std::vector<CategoryId> labels;
  for (const std::string& name : file.labels) labels.push_back(category_index(bundle.categories, name));
  std::size_t num_labels = bundle.categories.size();
  if (!a.positive.empty()) {
    const CategoryId pos = category_index(bundle.categories, a.positive);
    stored.positive = a.positive;
    for (CategoryId& l : labels) l = l == pos ? 1 : 0;
    num_labels = 2;
  }

  switch (stored.classifier) {
    case ClassifierKind::Knn:
      stored.model.emplace<KnnModel>(vectors, labels, a.k);
      break;
    case ClassifierKind::Centroid:
      stored.model = CentroidModel::train(vectors, labels, num_labels, dimension);
      break;
    case ClassifierKind::Svm: {
      SvmOptions options;
      options.c = a.svm_c;
      options.seed = a.seed;
      if (stored.positive) {
        std::vector<Polarity> polarity;
        for (CategoryId l : labels) polarity.push_back(l == 1 ? Polarity::Positive : Polarity::Negative);
        stored.model = svm_train(vectors, polarity, dimension, options);
      } else {
        stored.model = OneVsRestSvm::train(vectors, labels, num_labels, dimension, options);
      }
      break;
    }
  }
  write_json(a.model, model_to_json(stored));
  return 0;
}

// -------------------------------------------------------------- classify

int run_classify(const std::string& model_path, const std::string& input, const std::string& out) {
  const StoredModel stored = model_from_json(read_json(model_path));
  const VectorFile file = load_vector_file(input);
  const auto queries = file.as_weighted();

  std::optional<CategoryId> positive;
  if (stored.positive) positive = category_index(stored.categories, *stored.positive);

  std::vector<PredictionRecord> records;
  std::size_t fallbacks = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    CategoryId truth = category_index(stored.categories, file.labels[i]);
    if (positive) truth = truth == *positive ? 1 : 0;
    CategoryId predicted = 0;
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, LinearSvmModel>) {
            predicted = svm_classify(m, queries[i]).polarity == Polarity::Positive ? 1 : 0;
          } else if constexpr (!std::is_same_v<T, std::monostate>) {
            const Prediction p = m.classify(queries[i]);
            predicted = p.label;
            fallbacks += p.fallback ? 1 : 0;
          }
        },
        stored.model);
    records.push_back({file.ids[i], truth, predicted});
  }

  EvalReport report;
  if (positive) {
    const BinaryCounts counts = binary_counts(records);
    const PooledScores pooled = binary_pooled_scores(std::span<const BinaryCounts>(&counts, 1));
    report.macro_f1 = pooled.macro_f1;
    report.micro_f1 = pooled.micro_f1;
    report.records = records;
  } else {
    report = multiclass_scores(records, stored.categories.size());
    for (std::size_t c = 0; c < stored.categories.size(); ++c) report.per_category[c].name = stored.categories[c];
  }
  report.meta.scheme = stored.scheme;
  report.meta.classifier = std::string(classifier_name(stored.classifier));
  write_json(out, report);
  std::cout << "macro_f1 " << std::fixed << std::setprecision(6) << report.macro_f1 << "  micro_f1 "
            << report.micro_f1 << "  (" << records.size() << " documents)\n";
  if (fallbacks > 0) std::cerr << "warning: " << fallbacks << " zero-vector quer(ies) got the fallback label\n";
  return 0;
}

// ----------------------------------------------------------------- bench

int run_bench(const std::string& config_path, const std::string& output_dir, bool binary) {
  ExperimentConfig config = load_config(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  fs::create_directories(config.output_dir);
  std::ofstream log_file(config.output_dir / "run.log");
  const LogSink log = [&](const std::string& line) {
    std::cerr << line << '\n';
    log_file << line << '\n';
  };
  log(std::string(binary ? "bench-binary" : "bench-multiclass") + " corpus=" + config.corpus.string());
  const ResultsTable table = binary ? run_binary_local(config, log) : run_multiclass(config, log);
  write_outputs(table, config.output_dir);
  for (const AggregateRow& row : table.rows) {
    std::printf("%-9s %-18s macro_f1=%.4f micro_f1=%.4f\n", std::string(scheme_name(row.scheme)).c_str(),
                row.classifier_label.c_str(), row.macro_f1, row.micro_f1);
  }
  log("wrote results.csv, results.json, significance.csv to " + config.output_dir.string());
  return 0;
}

// --------------------------------------------------------------- mcnemar

std::vector<PredictionRecord> records_from(const nlohmann::json& j, const std::string& run, const std::string& what) {
  if (j.contains("records")) return j.at("records").get<std::vector<PredictionRecord>>();
  if (!j.contains("trials")) throw FormatError(what + ": neither a prediction report nor a results file");
  if (run.empty()) throw ConfigError(what + " is a results file; select a run with scheme/classifier/seed");
  std::vector<std::string> parts;
  std::stringstream ss(run);
  for (std::string p; std::getline(ss, p, '/');) parts.push_back(p);
  if (parts.size() != 3) throw ConfigError("run selector must be scheme/classifier/seed, got '" + run + "'");
  for (const auto& t : j.at("trials")) {
    if (t.at("scheme") == parts[0] && t.at("classifier") == parts[1] &&
        std::to_string(t.at("seed").get<std::uint64_t>()) == parts[2]) {
      return t.at("report").at("records").get<std::vector<PredictionRecord>>();
    }
  }
  throw ConfigError(what + ": no run " + run);
}

int run_mcnemar(const std::string& a, const std::string& b, const std::string& a_run, const std::string& b_run) {
  const auto ra = records_from(read_json(a), a_run, a);
  const auto rb = records_from(read_json(b), b_run.empty() ? a_run : b_run, b);
  const McNemarResult r = mcnemar(ra, rb);
  std::printf("n01=%zu n10=%zu statistic=%.4f %s at 0.01 (critical %.3f)\n", r.n01, r.n10, r.statistic,
              r.significant ? "significant" : "not significant", kMcNemarCritical);
  return 0;
}

// ---------------------------------------------------------------- report

int run_report(const std::string& input, const std::string& metric) {
  if (metric != "micro" && metric != "macro") throw ConfigError("--metric must be micro or macro");
  const nlohmann::json j = read_json(input);
  const std::string key = metric + "_f1";
  const bool binary = j.at("protocol") == "binary-local";
  std::vector<std::string> schemes = j.at("config").at("schemes").get<std::vector<std::string>>();
  std::vector<std::string> classifiers = j.at("config").at("classifiers").get<std::vector<std::string>>();
  std::map<std::pair<std::string, std::string>, double> cell;
  for (const auto& row : j.at("rows")) {
    cell[{row.at("scheme").get<std::string>(), row.at("classifier").get<std::string>()}] = row.at(key).get<double>();
  }
  // Multi-class: schemes down, classifiers across. Binary: the transpose.
  const auto& down = binary ? classifiers : schemes;
  const auto& across = binary ? schemes : classifiers;
  std::printf("%s (%s, %s)\n", key.c_str(), j.at("config").at("corpus_name").get<std::string>().c_str(),
              j.at("protocol").get<std::string>().c_str());
  std::printf("%-10s", "");
  for (const auto& c : across) std::printf("%10s", c.c_str());
  std::printf("\n");
  for (const auto& r : down) {
    std::printf("%-10s", r.c_str());
    for (const auto& c : across) {
      auto it = cell.find(binary ? std::make_pair(c, r) : std::make_pair(r, c));
      if (it == cell.end()) {
        std::printf("%10s", "-");
      } else {
        std::printf("%10.3f", it->second);
      }
    }
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termweight: term weighting schemes and classifiers for text categorization"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Tokenize a corpus, split it and write raw tf vectors");
  ingest_cmd->add_option("--corpus", ingest.corpus, "Corpus path")->required();
  ingest_cmd->add_option("--format", ingest.format, "dir or lines")->check(CLI::IsMember({"dir", "lines"}));
  ingest_cmd->add_option("--split", ingest.split, "given or stratified:<fraction>");
  ingest_cmd->add_option("--seed", ingest.seed, "Split seed");
  ingest_cmd->add_option("--stopwords", ingest.stopwords, "Stopword file (default: bundled list)");
  ingest_cmd->add_option("--min-count", ingest.min_count, "Drop terms seen fewer times in training");
  ingest_cmd->add_option("--out", ingest.out, "Output directory")->required();

  std::string stats_data;
  std::string stats_out;
  auto* stats_cmd = app.add_subcommand("stats", "Compute df/cf statistics of an ingested training split");
  stats_cmd->add_option("--data", stats_data, "Directory written by ingest")->required();
  stats_cmd->add_option("--out", stats_out, "Sidecar path (default: <data>/stats.tsv)");

  std::string weigh_stats;
  std::string weigh_input;
  std::string weigh_scheme;
  std::string weigh_positive;
  std::string weigh_out;
  bool weigh_no_normalize = false;
  auto* weigh_cmd = app.add_subcommand("weigh", "Apply a weighting scheme to a raw vector file");
  weigh_cmd->add_option("--stats", weigh_stats, "Stats sidecar")->required();
  weigh_cmd->add_option("--input", weigh_input, "Raw vector file")->required();
  weigh_cmd->add_option("--scheme", weigh_scheme,
                        "tf, idf, tfidf, tficf, tfrf, prob, tflogor, tfchi2, tfgr, tfig or icfbased")
      ->required();
  weigh_cmd->add_option("--positive", weigh_positive, "Positive category (supervised schemes)");
  weigh_cmd->add_flag("--no-normalize", weigh_no_normalize, "Skip L2 normalization");
  weigh_cmd->add_option("--out", weigh_out, "Output vector file")->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a classifier on a weighted vector file");
  train_cmd->add_option("--stats", train.stats, "Stats sidecar")->required();
  train_cmd->add_option("--input", train.input, "Weighted training vectors")->required();
  train_cmd->add_option("--classifier", train.classifier, "knn, centroid or svm")
      ->check(CLI::IsMember({"knn", "centroid", "svm"}));
  train_cmd->add_option("--scheme", train.scheme, "Scheme name recorded in the model");
  train_cmd->add_option("--positive", train.positive, "Train a binary positive-vs-rest model");
  train_cmd->add_option("--k", train.k, "kNN neighbours");
  train_cmd->add_option("--svm-c", train.svm_c, "SVM penalty C");
  train_cmd->add_option("--seed", train.seed, "SVM permutation seed");
  train_cmd->add_option("--model", train.model, "Model output (JSON)")->required();

  std::string classify_model;
  std::string classify_input;
  std::string classify_out;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a weighted vector file and score it");
  classify_cmd->add_option("--model", classify_model, "Model file")->required();
  classify_cmd->add_option("--input", classify_input, "Weighted test vectors")->required();
  classify_cmd->add_option("--out", classify_out, "Prediction report (JSON)")->required();

  std::string bench_config;
  std::string bench_output;
  auto* bench_mc = app.add_subcommand("bench-multiclass", "Multi-class comparison of unsupervised schemes");
  bench_mc->add_option("--config", bench_config, "Experiment config")->required();
  bench_mc->add_option("--output-dir", bench_output, "Overrides output_dir from the config");
  auto* bench_bin = app.add_subcommand("bench-binary", "One-vs-rest binary comparison (local policy)");
  bench_bin->add_option("--config", bench_config, "Experiment config")->required();
  bench_bin->add_option("--output-dir", bench_output, "Overrides output_dir from the config");

  std::string mc_a;
  std::string mc_b;
  std::string mc_a_run;
  std::string mc_b_run;
  auto* mcnemar_cmd = app.add_subcommand("mcnemar", "McNemar test between two prediction sets");
  mcnemar_cmd->add_option("--a", mc_a, "Prediction report or results.json")->required();
  mcnemar_cmd->add_option("--b", mc_b, "Prediction report or results.json")->required();
  mcnemar_cmd->add_option("--a-run", mc_a_run, "scheme/classifier/seed when --a is a results file");
  mcnemar_cmd->add_option("--b-run", mc_b_run, "scheme/classifier/seed when --b is a results file");

  std::string report_input;
  std::string report_metric = "micro";
  auto* report_cmd = app.add_subcommand("report", "Print a results.json as a scheme x classifier table");
  report_cmd->add_option("--input", report_input, "results.json")->required();
  report_cmd->add_option("--metric", report_metric, "micro or macro");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest);
    if (*stats_cmd) return run_stats(stats_data, stats_out);
    if (*weigh_cmd) return run_weigh(weigh_stats, weigh_input, weigh_scheme, weigh_positive, weigh_no_normalize, weigh_out);
    if (*train_cmd) return run_train(train);
    if (*classify_cmd) return run_classify(classify_model, classify_input, classify_out);
    if (*bench_mc) return run_bench(bench_config, bench_output, false);
    if (*bench_bin) return run_bench(bench_config, bench_output, true);
    if (*mcnemar_cmd) return run_mcnemar(mc_a, mc_b, mc_a_run, mc_b_run);
    if (*report_cmd) return run_report(report_input, report_metric);
  } catch (const std::exception& e) {
    std::cerr << "termweight: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
