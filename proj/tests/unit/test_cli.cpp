#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>

#include <json.hpp>

#include "fixtures.hpp"

using fixtures::TempDir;
using fixtures::read_file;
using fixtures::write_file;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const TempDir& dir, const std::string& args) {
  const auto out = dir.path / "stdout.txt";
  const auto err = dir.path / "stderr.txt";
  const std::string cmd = std::string(TERMWEIGHT_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, read_file(out), read_file(err)};
}

void make_corpus(const std::filesystem::path& root) {
  const char* words[3][4] = {{"goal", "match", "team", "league"},
                             {"chip", "server", "code", "network"},
                             {"flour", "oven", "sugar", "recipe"}};
  const char* names[3] = {"sport", "tech", "food"};
  for (int c = 0; c < 3; ++c) {
    for (int d = 0; d < 9; ++d) {
      std::string text;
      for (int t = 0; t < 4; ++t) {
        for (int r = 0; r <= (d + t) % 3; ++r) text += std::string(words[c][t]) + " ";
      }
      write_file(root / names[c] / ("d" + std::to_string(d) + ".txt"), text);
    }
  }
}

}  // namespace

TEST_CASE("cli usage errors exit 2") {
  TempDir dir("cli-usage");
  CHECK(run(dir, "").status == 2);
  CHECK(run(dir, "frobnicate").status == 2);
  CHECK(run(dir, "ingest --bogus").status == 2);
  CHECK(run(dir, "train --classifier nb --stats x --input y --model z").status == 2);
  const Run help = run(dir, "--help");
  CHECK(help.status == 0);
  CHECK(help.out.find("bench-multiclass") != std::string::npos);
  const Run sub = run(dir, "train --help");
  CHECK(sub.out.find("--svm-c") != std::string::npos);
  CHECK(sub.out.find("--k") != std::string::npos);
}

TEST_CASE("cli runtime errors exit 1 and name the path") {
  TempDir dir("cli-missing");
  const Run r = run(dir, "ingest --corpus /no/such/corpus --out " + (dir.path / "o").string());
  CHECK(r.status == 1);
  CHECK(r.err.find("/no/such/corpus") != std::string::npos);
}

TEST_CASE("cli step-by-step pipeline") {
  TempDir dir("cli-pipeline");
  make_corpus(dir.path / "corpus");
  const std::string d = (dir.path / "data").string();
  REQUIRE(run(dir, "ingest --corpus " + (dir.path / "corpus").string() + " --out " + d + " --seed 2").status == 0);
  REQUIRE(run(dir, "stats --data " + d).status == 0);
  CHECK(read_file(d + "/stats.tsv").rfind("#termweight-stats\tv1\t21\t3\t", 0) == 0);

  for (const char* split : {"train", "test"}) {
    REQUIRE(run(dir, std::string("weigh --stats ") + d + "/stats.tsv --input " + d + "/" + split + ".vec --scheme tficf --out " +
                         d + "/" + split + ".w")
                .status == 0);
  }
  for (const char* classifier : {"knn", "centroid", "svm"}) {
    const std::string model = d + "/" + classifier + ".json";
    REQUIRE(run(dir, "train --stats " + d + "/stats.tsv --input " + d + "/train.w --classifier " + classifier +
                         " --k 3 --model " + model)
                .status == 0);
    const Run c = run(dir, "classify --model " + model + " --input " + d + "/test.w --out " + d + "/" + classifier + "-pred.json");
    REQUIRE(c.status == 0);
    CHECK(c.out.find("micro_f1 1.000000") != std::string::npos);
  }
  const Run m = run(dir, "mcnemar --a " + d + "/knn-pred.json --b " + d + "/svm-pred.json");
  CHECK(m.status == 0);
  CHECK(m.out.find("not significant") != std::string::npos);

  // Supervised schemes need a positive category.
  CHECK(run(dir, "weigh --stats " + d + "/stats.tsv --input " + d + "/train.vec --scheme tfrf --out " + d + "/x").status == 1);
  CHECK(run(dir, "weigh --stats " + d + "/stats.tsv --input " + d + "/train.vec --scheme tfrf --positive tech --out " + d +
                     "/x")
            .status == 0);
}

TEST_CASE("cli bench and report") {
  TempDir dir("cli-bench");
  make_corpus(dir.path / "corpus");
  write_file(dir.path / "run.conf",
             "corpus = corpus\n"
             "split = stratified:0.33\n"
             "seeds = 1,2\n"
             "schemes = tf, tficf\n"
             "classifiers = knn, centroid\n"
             "k = 3\n");
  const std::string out = (dir.path / "res").string();
  const Run b = run(dir, "bench-multiclass --config " + (dir.path / "run.conf").string() + " --output-dir " + out);
  REQUIRE(b.status == 0);
  for (const char* f : {"results.csv", "results.json", "significance.csv", "run.log"}) {
    CHECK(std::filesystem::exists(std::filesystem::path(out) / f));
  }
  const std::string first = read_file(out + "/results.csv");
  REQUIRE(run(dir, "bench-multiclass --config " + (dir.path / "run.conf").string() + " --output-dir " + out).status == 0);
  CHECK(read_file(out + "/results.csv") == first);

  const Run r = run(dir, "report --input " + out + "/results.json");
  CHECK(r.status == 0);
  CHECK(r.out.find("tficf") != std::string::npos);

  const Run m = run(dir, "mcnemar --a " + out + "/results.json --b " + out + "/results.json --a-run tf/knn/1 --b-run tficf/knn/1");
  CHECK(m.status == 0);

  const std::string bout = (dir.path / "bres").string();
  write_file(dir.path / "bin.conf",
             "corpus = corpus\nseeds = 1\nschemes = icfbased, tfrf, prob\nclassifiers = centroid, svm\n");
  REQUIRE(run(dir, "bench-binary --config " + (dir.path / "bin.conf").string() + " --output-dir " + bout).status == 0);
  const auto json = nlohmann::json::parse(read_file(bout + "/results.json"));
  CHECK(json.at("protocol") == "binary-local");
  CHECK(json.at("rows").size() == 6);
}
