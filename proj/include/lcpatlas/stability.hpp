#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcpatlas/cones.hpp"
#include "lcpatlas/lcp_core.hpp"
#include "lcpatlas/types.hpp"

namespace lcpatlas {

// Supports alpha whose complementary matrix is singular, in mask order.
std::vector<IndexSet> degenerate_cones(const Mat& M, const Tolerances& tol = {});

enum class DegeneracyKind {
  DegenerateCone,   // some complementary matrix is singular
  ColumnInFacetFamily,  // -M_k lies in a facet of a cone that replaces column k by I_k
};

struct DegeneracyWitness {
  DegeneracyKind kind;
  IndexSet alpha;                // DegenerateCone: the offending support
  int k = 0;                     // ColumnInFacetFamily: the column index (1-based)
  std::optional<Cone> facet;     // ColumnInFacetFamily: the facet containing -M_k
  std::string describe() const;
};

struct WeakDegeneracyReport {
  bool weakly_degenerate = false;
  std::optional<DegeneracyWitness> witness;
};

// Both tests are exhaustive over supports; n <= 12.
WeakDegeneracyReport is_weakly_degenerate(const Mat& M, const Tolerances& tol = {});
bool is_lcp_stable(const Mat& M, const Tolerances& tol = {});

// Sufficient test: every square submatrix (all equal-size row/column subsets)
// nonsingular implies stability. Returns the first singular minor otherwise.
struct MinorsReport {
  bool all_nonsingular = true;
  std::optional<std::pair<IndexSet, IndexSet>> singular_minor;  // (rows, cols)
};
MinorsReport minors_sufficient(const Mat& M, const Tolerances& tol = {});  // n <= 10

enum class MarginFamily {
  FacetCone,  // distance from -M_k (normalized) to a facet cone avoiding column k
  SpanDrop,   // distance from -M_k (normalized) to the span of a complementary
              // matrix with column k removed
};

struct MarginTerm {
  MarginFamily family;
  int k = 0;          // column index (1-based)
  std::string label;  // facet label or remaining-column symbols
  double distance = 0.0;
};

struct StabilityReport {
  double margin = 0.0;   // in [0, 1]; 0 iff weakly degenerate
  bool zero_column = false;
  std::optional<MarginTerm> argmin;
  std::vector<double> facet_min_by_column;  // min facet-cone distance per k
  std::vector<double> span_min_by_column;   // min span-drop distance per k
};

// Normalized distance to the nearest weakly degenerate matrix, measured
// column-wise over unit columns. n <= 12.
StabilityReport stability_margin(const Mat& M, const Tolerances& tol = {});

}  // namespace lcpatlas
