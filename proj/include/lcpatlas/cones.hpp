#pragma once

#include "lcpatlas/types.hpp"

namespace lcpatlas {

// Finitely generated cones {G p : p >= 0}, their facets, and distances.
// Generators of cones derived from a matrix M are tracked symbolically
// (identity column or negated M column) so facet collections can be
// deduplicated exactly and printed readably.

enum class GenKind { Identity, NegatedColumn };

struct GenSymbol {
  GenKind kind;
  int index;  // 1-based column index

  bool operator==(const GenSymbol& o) const {
    return kind == o.kind && index == o.index;
  }
  bool operator<(const GenSymbol& o) const {
    if (kind != o.kind) return kind < o.kind;
    return index < o.index;
  }
  std::string to_string() const;  // "I_2" or "-M_1"
};

struct Cone {
  Mat generators;                   // n x m, m >= 0
  std::vector<GenSymbol> symbols;   // empty when generators are anonymous
  std::optional<IndexSet> alpha;    // source support set, when applicable
  std::optional<int> dropped;       // dropped column (facet cones)

  std::string label() const;        // "pos[-M_1, I_2]" when symbolic
};

/// Nonnegative least squares min ||G p - v||, p >= 0 (active-set method).
/// Iterations are capped at 100 * cols; returns the best point found with
/// its residual. Zero-size G is the apex cone {0}.
struct NnlsResult {
  Vec p;
  double residual = 0.0;
  int iterations = 0;
  bool converged = true;
};
NnlsResult nnls(const Mat& G, const Vec& v);

/// Coefficients p >= 0 with G p ~ v when v lies in the cone (residual within
/// tol.membership_tol), nullopt otherwise. Zero generator columns are
/// dropped before solving.
std::optional<Vec> cone_membership(const Mat& generators, const Vec& v,
                                   const Tolerances& tol = {});

/// Euclidean distance from v to the cone {G p : p >= 0}.
double cone_distance(const Mat& generators, const Vec& v);

/// Euclidean distance from v to the linear span of the generator columns.
double span_distance(const Mat& generators, const Vec& v);

/// The n facets of the complementary cone of alpha: drop each column of the
/// cone matrix in turn.
std::vector<Cone> facets_of_cone(const Mat& M, const IndexSet& alpha);

/// All facet cones, over every support set, in which column k never appears
/// negated: facets of complementary cones with k not in alpha. Deduplicated
/// by symbol set. These are the candidate witnesses for the containment
/// test of column -M_col(k). n <= 16.
std::vector<Cone> facet_family(const Mat& M, int k);

/// Distance from q to the union of all complementary-cone facets (the set
/// where solution counts can change). n <= 16.
double skeleton_distance(const Mat& M, const Vec& q);

/// TRUE iff q lies within tol (scaled by 1 + ||q||) of some facet cone.
bool in_skeleton(const Mat& M, const Vec& q, double tol = 1e-9);

// ---- planar cells -----------------------------------------------------------

/// Open angular sector (start, end) in radians with end > start; the cells of
/// the plane cut by identity and negated-column rays.
struct Sector2D {
  double start = 0.0;
  double end = 0.0;
  double midpoint() const { return 0.5 * (start + end); }
  Vec midpoint_dir() const;
};

/// Sectors between consecutive rays of {e_1, e_2, -M_col(1), -M_col(2)}.
/// Zero columns contribute no ray; rays closer than 1e-9 rad are merged.
/// Sectors are listed counterclockwise starting from the first ray at or
/// above angle 0.
std::vector<Sector2D> cells_2d(const Mat& M);

}  // namespace lcpatlas
