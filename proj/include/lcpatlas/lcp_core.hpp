#pragma once

#include "lcpatlas/types.hpp"

namespace lcpatlas {

// A linear complementarity problem: find z >= 0 with w = M z + q >= 0 and
// z' w = 0. Solutions are carried both as (z, w) and as the point
// x = (M - I) z + q of the equivalent piecewise-linear equation
// pwl_map(M, x) = q, from which z = max(-x, 0) is recovered.

struct LcpInstance {
  Mat M;
  Vec q;
  Tolerances tol;

  LcpInstance(Mat m, Vec rhs, Tolerances t = {});
  int n() const { return static_cast<int>(q.size()); }
};

/// Matrix whose column j is -M_col(j) for j in alpha and the identity
/// column e_j otherwise. Its nonnegative span is the complementary cone
/// for the support set alpha.
Mat complementary_matrix(const Mat& M, const IndexSet& alpha);

/// Sign matrix with -1 at diagonal positions in alpha, +1 elsewhere
/// (complementary_matrix of the identity).
Mat orthant_sign_matrix(const IndexSet& alpha, int n);

/// The piecewise-linear map max(x,0) - M max(-x,0). Solving
/// pwl_map(M, x) = q is equivalent to the LCP: z = max(-x,0) and,
/// conversely, x = (M - I) z + q.
Vec pwl_map(const Mat& M, const Vec& x);

Vec z_from_x(const Vec& x);
Vec x_from_z(const Mat& M, const Vec& q, const Vec& z);

/// One locally unique solution, tagged with the orthant/support set that
/// produced it.
struct IsolatedSolution {
  IndexSet alpha;
  Vec z;
  Vec w;
  Vec x;
};

/// Witness for a solution continuum inside a singular complementary cone:
/// a particular solution plus kernel directions of the cone matrix (both in
/// x coordinates). Points x_p + span(generators) intersected with the
/// orthant of alpha remain solutions.
struct DegenerateFamily {
  IndexSet alpha;
  Vec particular_x;
  Vec particular_z;
  std::vector<Vec> nullspace_generators;
};

struct SolutionSet {
  std::vector<IsolatedSolution> isolated;
  std::vector<DegenerateFamily> degenerate;

  bool continuum() const { return !degenerate.empty(); }
  /// Number of solutions when finite; nullopt marks a continuum.
  std::optional<int> exact_count() const {
    if (continuum()) return std::nullopt;
    return static_cast<int>(isolated.size());
  }
};

/// Exhaustive solve over all 2^n support sets. For each nonsingular
/// complementary cone matrix the candidate combination is accepted when its
/// coefficients are >= -sign_tol; singular cones containing q are reported
/// as degenerate families. Duplicate solutions (shared orthant boundaries)
/// are merged by their x representative. n <= 16.
SolutionSet solve_enumerate(const LcpInstance& problem);

enum class LemkeStatus { Solved, RayTermination };

struct LemkeResult {
  LemkeStatus status = LemkeStatus::Solved;
  Vec z;  // valid when status == Solved
  int pivots = 0;
};

/// Complementary pivoting with a unit covering vector and lexicographic
/// ratio test. Ray termination is reported, not thrown; exceeding the pivot
/// cap throws PivotLimitError.
LemkeResult solve_lemke(const LcpInstance& problem, int max_pivots = 0);

/// max(-tol, min over components of z, w, and |z_i w_i|) style residual:
/// returns the largest constraint violation of (z, w = Mz + q).
double lcp_residual(const Mat& M, const Vec& q, const Vec& z);

}  // namespace lcpatlas
