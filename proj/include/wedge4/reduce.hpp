#pragma once

#include <cstddef>
#include <span>

// Fixed-order pairwise-tree reductions. Every integral, norm, and Krylov dot
// product in the project funnels through these, so results do not depend on
// traversal order and are bit-reproducible run to run.

namespace wedge4 {

namespace detail {

template <class F>
double pairwise_reduce(size_t lo, size_t hi, F&& term) {
  const size_t n = hi - lo;
  if (n <= 32) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const size_t mid = lo + n / 2;
  return pairwise_reduce(lo, mid, term) + pairwise_reduce(mid, hi, term);
}

}  // namespace detail

inline double pairwise_sum(std::span<const double> v) {
  return detail::pairwise_reduce(0, v.size(), [&](size_t i) { return v[i]; });
}

inline double pairwise_dot(std::span<const double> a, std::span<const double> b) {
  return detail::pairwise_reduce(0, a.size(), [&](size_t i) { return a[i] * b[i]; });
}

}  // namespace wedge4
