#pragma once

#include <cmath>
#include <random>

#include "lcpatlas/types.hpp"

namespace testutil {

using lcpatlas::Mat;
using lcpatlas::Vec;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(g()) /
                           (static_cast<double>(std::mt19937_64::max()) + 1.0));
}

inline Mat random_matrix(std::mt19937_64& g, int n, double scale = 2.0) {
  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = uniform(g, -scale, scale);
  return M;
}

inline Vec random_vector(std::mt19937_64& g, int n, double scale = 2.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(g, -scale, scale);
  return v;
}

// Random P-matrix: positive diagonally dominant, occasionally symmetrized.
inline Mat random_p_matrix(std::mt19937_64& g, int n) {
  Mat M = random_matrix(g, n, 1.0);
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) off += std::abs(M(i, j));
    M(i, i) = off + uniform(g, 0.1, 1.5);
  }
  return M;
}

// The symmetric one-parameter family [[ -1+e, e ], [ e, -1+e ]].
inline Mat eps_family(double e) {
  Mat M(2, 2);
  M << -1.0 + e, e, e, -1.0 + e;
  return M;
}

// Closed-form stability margin of eps_family: min over the two facet-cone
// distances and the two span distances of the normalized columns.
inline double eps_family_margin(double e) {
  const double rho = std::hypot(1.0 - e, e);
  if (rho == 0.0) return 0.0;
  const double a1 = 1.0;
  const double a2 = std::abs(e) / rho;
  const double b1 = std::abs(1.0 - e) / rho;
  // sin(acos(2e(1-e)/rho^2)) simplified: 1 - c^2 = (1-2e)^2 / rho^4 exactly,
  // which avoids the sqrt-of-roundoff noise of acos near 1.
  const double b2 = std::abs(1.0 - 2.0 * e) / (rho * rho);
  return std::min(std::min(a1, a2), std::min(b1, b2));
}

// Square 3x3 example with no degenerate cone yet one column inside a facet
// generated by other columns.
inline Mat partition_example_3x3() {
  Mat M(3, 3);
  M << 0.5, 5.0 / 3.0, 0.0, 1.0, 1.0, 0.0, -0.3, -1.0, 1.0;
  return M;
}

// Left / right matrices of the singular-vs-regular pair used across tests.
inline Mat ones_2x2() {
  Mat M(2, 2);
  M << 1.0, 1.0, 1.0, 1.0;
  return M;
}

inline Mat regular_pair_2x2() {
  Mat N(2, 2);
  N << 1.0, -1.0, 1.0, 0.0;
  return N;
}

}  // namespace testutil
