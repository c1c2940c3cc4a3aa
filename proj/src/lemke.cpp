#include "lcpatlas/lcp_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcpatlas {

namespace {

constexpr double kPivotEps = 1e-11;

// Normalize the pivot row and eliminate the pivot column elsewhere.
void pivot(Mat& T, int prow, int pcol) {
  T.row(prow) /= T(prow, pcol);
  for (int i = 0; i < T.rows(); ++i) {
    if (i == prow) continue;
    const double f = T(i, pcol);
    if (f != 0.0) T.row(i) -= f * T.row(prow);
  }
}

// Lexicographic ratio test over [q | basis-inverse] rows, restricted to the
// candidate row set. Returns the winning row.
int lexico_min_row(const Mat& T, const std::vector<int>& rows, int pcol, int n) {
  int best = rows[0];
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const int r = rows[k];
    // Compare (q, B^-1 row)/pivot entry lexicographically.
    const double ar = T(r, pcol), ab = T(best, pcol);
    double diff = T(r, 2 * n + 1) / ar - T(best, 2 * n + 1) / ab;
    int col = 0;
    while (std::abs(diff) <= 1e-13 && col < n) {
      diff = T(r, col) / ar - T(best, col) / ab;
      ++col;
    }
    if (diff < 0) best = r;
  }
  return best;
}

}  // namespace

LemkeResult solve_lemke(const LcpInstance& problem, int max_pivots) {
  const int n = problem.n();
  if (max_pivots <= 0) max_pivots = 10000 + 100 * n * n;
  LemkeResult out;

  const double feas_tol = problem.tol.sign_tol(problem.q.norm());
  if ((problem.q.array() >= -feas_tol).all()) {
    out.z = Vec::Zero(n);
    return out;
  }

  // Columns: [0, n) basic w, [n, 2n) z (-M), 2n artificial (covering -1), 2n+1 rhs.
  Mat T(n, 2 * n + 2);
  T.leftCols(n) = Mat::Identity(n, n);
  T.middleCols(n, n) = -problem.M;
  T.col(2 * n) = -Vec::Ones(n);
  T.col(2 * n + 1) = problem.q;

  std::vector<int> basic(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) basic[static_cast<std::size_t>(i)] = i;

  int prow = 0;
  problem.q.minCoeff(&prow);
  const int art = 2 * n;
  pivot(T, prow, art);
  int leaving = basic[static_cast<std::size_t>(prow)];
  basic[static_cast<std::size_t>(prow)] = art;

  for (int iter = 0; iter < max_pivots; ++iter) {
    const int entering = (leaving < n) ? leaving + n : leaving - n;  // complement
    std::vector<int> candidates;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double a = T(i, entering);
      if (a > kPivotEps) {
        const double ratio = T(i, 2 * n + 1) / a;
        if (ratio < min_ratio - 1e-12) {
          min_ratio = ratio;
          candidates.assign(1, i);
        } else if (ratio <= min_ratio + 1e-12) {
          candidates.push_back(i);
          min_ratio = std::min(min_ratio, ratio);
        }
      }
    }
    if (candidates.empty()) {
      out.status = LemkeStatus::RayTermination;
      out.pivots = iter + 1;
      return out;
    }
    // Drive the artificial out as soon as it is eligible; otherwise break
    // ties lexicographically to preclude cycling.
    prow = -1;
    for (int r : candidates) {
      if (basic[static_cast<std::size_t>(r)] == art) {
        prow = r;
        break;
      }
    }
    if (prow < 0) prow = lexico_min_row(T, candidates, entering, n);

    pivot(T, prow, entering);
    leaving = basic[static_cast<std::size_t>(prow)];
    basic[static_cast<std::size_t>(prow)] = entering;
    if (leaving == art) {
      out.z = Vec::Zero(n);
      for (int i = 0; i < n; ++i) {
        const int v = basic[static_cast<std::size_t>(i)];
        if (v >= n && v < 2 * n) out.z(v - n) = std::max(0.0, T(i, 2 * n + 1));
      }
      out.pivots = iter + 1;
      return out;
    }
  }
  throw PivotLimitError("solve_lemke: pivot limit exceeded");
}

}  // namespace lcpatlas
