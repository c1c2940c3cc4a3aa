#include "lcpatlas/simplex_lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace lcpatlas {

namespace {

constexpr double kEps = 1e-10;

struct Tableau {
  Mat T;                  // m x (ncols + 1), last column is the rhs
  std::vector<int> basis; // basic variable per row
  int ncols = 0;

  void pivot(int prow, int pcol) {
    T.row(prow) /= T(prow, pcol);
    for (int i = 0; i < T.rows(); ++i) {
      if (i == prow) continue;
      const double f = T(i, pcol);
      if (f != 0.0) T.row(i) -= f * T.row(prow);
    }
    basis[static_cast<std::size_t>(prow)] = pcol;
  }
};

// Bland's rule iteration on the given cost vector; allowed[j] masks columns
// that may enter. Returns false when unbounded.
bool run_simplex(Tableau& tb, const Vec& cost, const std::vector<bool>& allowed) {
  const int m = static_cast<int>(tb.T.rows());
  for (int iter = 0; iter < 20000; ++iter) {
    // Reduced costs c_j - c_B' (B^-1 A_j).
    int enter = -1;
    for (int j = 0; j < tb.ncols; ++j) {
      if (!allowed[static_cast<std::size_t>(j)]) continue;
      double red = cost(j);
      for (int i = 0; i < m; ++i) red -= cost(tb.basis[static_cast<std::size_t>(i)]) * tb.T(i, j);
      if (red < -kEps) {
        enter = j;
        break;  // Bland: smallest eligible index
      }
    }
    if (enter < 0) return true;  // optimal

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double a = tb.T(i, enter);
      if (a > kEps) {
        const double ratio = tb.T(i, tb.ncols) / a;
        if (ratio < best_ratio - kEps ||
            (ratio < best_ratio + kEps &&
             (leave < 0 || tb.basis[static_cast<std::size_t>(i)] < tb.basis[static_cast<std::size_t>(leave)]))) {
          best_ratio = std::min(ratio, best_ratio);
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded
    tb.pivot(leave, enter);
  }
  throw NumericError("solve_lp: iteration limit exceeded");
}

}  // namespace

LpResult solve_lp(const Mat& A, const Vec& b, const Vec& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) throw InputError("solve_lp: dimension mismatch");

  Tableau tb;
  tb.ncols = n + m;  // structural + artificial
  tb.T.resize(m, tb.ncols + 1);
  tb.T.leftCols(n) = A;
  tb.T.middleCols(n, m) = Mat::Identity(m, m);
  tb.T.col(tb.ncols) = b;
  for (int i = 0; i < m; ++i) {
    if (tb.T(i, tb.ncols) < 0) tb.T.row(i) *= -1.0;
    tb.basis.push_back(n + i);
  }

  // Phase 1: minimize the artificial sum.
  Vec phase1 = Vec::Zero(tb.ncols);
  phase1.tail(m).setOnes();
  std::vector<bool> all(static_cast<std::size_t>(tb.ncols), true);
  if (!run_simplex(tb, phase1, all)) throw NumericError("solve_lp: phase 1 unbounded");

  double art_sum = 0.0;
  for (int i = 0; i < m; ++i)
    if (tb.basis[static_cast<std::size_t>(i)] >= n) art_sum += tb.T(i, tb.ncols);
  LpResult out;
  if (art_sum > 1e-7) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Drive zero-valued artificials out of the basis: a pivot on another row
  // could otherwise push them positive again during phase 2.
  for (int i = 0; i < m; ++i) {
    if (tb.basis[static_cast<std::size_t>(i)] < n) continue;
    int pcol = -1;
    double best = kEps;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tb.T(i, j)) > best) {
        best = std::abs(tb.T(i, j));
        pcol = j;
      }
    }
    // All-zero structural row: redundant constraint, the artificial stays at
    // zero because every later pivot adds a multiple of ~0 to this row.
    if (pcol >= 0) tb.pivot(i, pcol);
  }

  // Phase 2: artificials may not re-enter.
  std::vector<bool> allowed(static_cast<std::size_t>(tb.ncols), true);
  for (int j = n; j < tb.ncols; ++j) allowed[static_cast<std::size_t>(j)] = false;
  Vec cost = Vec::Zero(tb.ncols);
  cost.head(n) = c;
  if (!run_simplex(tb, cost, allowed)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.x = Vec::Zero(n);
  for (int i = 0; i < m; ++i) {
    const int v = tb.basis[static_cast<std::size_t>(i)];
    if (v < n) out.x(v) = tb.T(i, tb.ncols);
  }
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace lcpatlas
