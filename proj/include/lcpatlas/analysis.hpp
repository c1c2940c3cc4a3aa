#pragma once

#include "lcpatlas/lcp_core.hpp"
#include "lcpatlas/types.hpp"

#include <cstdint>

namespace lcpatlas {

// Zero-kernel test, solution indices, and the mapping degree of the
// piecewise-linear map, plus matrix-class predicates.

struct R0Report {
  bool is_r0 = true;
  // Witness when false: a nonzero p >= 0 in the kernel of the cone matrix.
  std::optional<IndexSet> witness_alpha;
  std::optional<Vec> witness_p;
};

/// TRUE iff no complementary cone matrix has a nonzero nonnegative kernel
/// vector. Decided per support set by the bounded program
/// max 1'p s.t. C p = 0, 0 <= p <= 1 (positive optimum refutes). n <= 16.
R0Report is_R0(const Mat& M, const Tolerances& tol = {});

/// Sign of det M[alpha,alpha]; +1 for the empty set. Throws
/// SingularMatrixError when the minor vanishes at working precision.
int index_at(const Mat& M, const IndexSet& alpha, const Tolerances& tol = {});

struct DegreeReport {
  int degree = 0;
  Vec probe_q;
  std::vector<std::pair<IndexSet, int>> solution_indices;  // (support, +-1)
  int probes_rejected = 0;
};

/// Sum of solution indices at a generic probe direction. Requires an
/// R0 matrix (throws NotR0Error otherwise); probes are drawn uniformly from
/// the unit sphere with the given seed and rejected while they touch the
/// cone skeleton or yield boundary solutions. Throws ProbeExhaustedError
/// after 1000 rejections.
DegreeReport degree(const Mat& M, std::uint64_t seed = 12345,
                    const Tolerances& tol = {});

/// All principal minors det M[alpha,alpha], nonempty alpha in mask order.
std::vector<std::pair<IndexSet, double>> all_principal_minors(const Mat& M);

/// TRUE iff every principal minor is positive. n <= 16.
bool is_P(const Mat& M, const Tolerances& tol = {});

/// Exact strict-copositivity decision for n <= 3 by enumerating the KKT
/// points of x'Mx on every face of the unit simplex.
bool is_strictly_copositive_small(const Mat& M);

struct SingularityFlags {
  bool on_orthant_boundary = false;
  /// Orthant whose matrix piece of the pwl map is singular at x, if any.
  std::optional<IndexSet> singular_piece;
};

/// Diagnoses a point of the pwl map domain: closeness to an orthant
/// boundary and singularity of the active linear piece.
SingularityFlags singularity_flags(const Mat& M, const Vec& x,
                                   double boundary_tol = 1e-9,
                                   const Tolerances& tol = {});

}  // namespace lcpatlas
