#pragma once

#include <cstddef>
#include <span>

namespace rigidpen {

// Fixed-shape pairwise summation. The tree depends only on the length of the
// range, so results are bitwise reproducible regardless of how callers split
// work.
template <class F>
double pairwise_reduce(std::size_t begin, std::size_t end, const F& term) {
  constexpr std::size_t kLeaf = 32;
  if (end - begin <= kLeaf) {
    double s = 0.0;
    for (std::size_t k = begin; k < end; ++k) s += term(k);
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_reduce(begin, mid, term) + pairwise_reduce(mid, end, term);
}

inline double pairwise_sum(std::span<const double> values) {
  return pairwise_reduce(0, values.size(), [&](std::size_t k) { return values[k]; });
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return pairwise_reduce(0, a.size(), [&](std::size_t k) { return a[k] * b[k]; });
}

}  // namespace rigidpen
