#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace termweight {

using TermId = std::uint32_t;
using CategoryId = std::uint32_t;

struct Entry {
  TermId term = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Raw term-frequency vector of one document. Entries are sorted by term id,
/// strictly increasing, and never zero.
struct SparseVector {
  std::vector<Entry> entries;
  double max_tf = 0.0;

  bool empty() const { return entries.empty(); }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// Weighted document vector. Same ordering rules as SparseVector.
struct WeightedVector {
  std::vector<Entry> entries;
  bool normalized = false;

  bool empty() const { return entries.empty(); }
  friend bool operator==(const WeightedVector&, const WeightedVector&) = default;
};

double dot(std::span<const Entry> a, std::span<const Entry> b);
double dot_dense(std::span<const Entry> a, std::span<const double> dense);
double l2_norm(std::span<const Entry> v);

}  // namespace termweight
