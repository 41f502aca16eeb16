#pragma once

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "termweight/corpus.hpp"
#include "termweight/random.hpp"
#include "termweight/sparse.hpp"
#include "termweight/stats.hpp"

namespace fixtures {

using namespace termweight;

// Alphabetic word for an index: 0 -> "wa", 25 -> "wz", 26 -> "wba", ...
inline std::string word(std::size_t i) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i > 0);
  return "w" + s;
}

inline std::string category_name(std::size_t c) { return std::string("cat") + static_cast<char>('a' + c); }

// Random labelled documents. Each category prefers its own slice of the
// vocabulary but draws a share of tokens from anywhere.
inline std::vector<RawDocument> random_raw(std::uint64_t seed, std::size_t num_docs, std::size_t num_categories,
                                           std::size_t vocab, std::size_t max_len = 12) {
  Rng rng(seed);
  std::vector<RawDocument> docs;
  for (std::size_t i = 0; i < num_docs; ++i) {
    const std::size_t c = i < num_categories * 2 ? i % num_categories : rng.below(num_categories);
    const std::size_t len = 1 + rng.below(max_len);
    std::string text;
    for (std::size_t t = 0; t < len; ++t) {
      std::size_t w = rng.below(vocab);
      if (rng.below(3) != 0) w = (c * vocab / num_categories + rng.below(vocab / num_categories + 1)) % vocab;
      text += word(w) + (rng.below(4) == 0 ? ", " : " ");
    }
    char id[32];
    std::snprintf(id, sizeof id, "doc%03zu", i);
    docs.push_back({id, category_name(c), text});
  }
  return docs;
}

inline Corpus random_corpus(std::uint64_t seed, std::size_t num_docs, std::size_t num_categories, std::size_t vocab) {
  const auto raw = random_raw(seed, num_docs, num_categories, vocab);
  return build_corpus(raw, StopwordSet{});
}

// Scratch directory removed on scope exit.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("termweight-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline WeightedVector wv(std::vector<Entry> entries, bool normalized = false) { return {std::move(entries), normalized}; }

inline SparseVector sv(std::vector<Entry> entries) {
  SparseVector v{std::move(entries), 0.0};
  for (const Entry& e : v.entries) v.max_tf = std::max(v.max_tf, e.value);
  return v;
}

}  // namespace fixtures
