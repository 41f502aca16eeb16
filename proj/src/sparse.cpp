#include "termweight/sparse.hpp"

#include <cmath>

namespace termweight {

double dot(std::span<const Entry> a, std::span<const Entry> b) {
  double sum = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->term < j->term) {
      ++i;
    } else if (j->term < i->term) {
      ++j;
    } else {
      sum += i->value * j->value;
      ++i;
      ++j;
    }
  }
  return sum;
}

double dot_dense(std::span<const Entry> a, std::span<const double> dense) {
  double sum = 0.0;
  for (const Entry& e : a) {
    if (e.term < dense.size()) sum += e.value * dense[e.term];
  }
  return sum;
}

double l2_norm(std::span<const Entry> v) {
  double sq = 0.0;
  for (const Entry& e : v) sq += e.value * e.value;
  return std::sqrt(sq);
}

}  // namespace termweight
