#include "lcpatlas/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lcpatlas {

std::string DegeneracyWitness::describe() const {
  std::ostringstream os;
  if (kind == DegeneracyKind::DegenerateCone) {
    os << "singular complementary matrix at alpha " << alpha.to_string();
  } else {
    os << "-M_" << k << " lies in facet " << (facet ? facet->label() : std::string("?"));
  }
  return os.str();
}

std::vector<IndexSet> degenerate_cones(const Mat& M, const Tolerances& tol) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 16) throw UnsupportedDimension("degenerate_cones: n > 16");
  std::vector<IndexSet> out;
  for_each_subset(n, [&](const IndexSet& alpha) {
    if (is_singular(complementary_matrix(M, alpha), tol)) out.push_back(alpha);
  });
  return out;
}

WeakDegeneracyReport is_weakly_degenerate(const Mat& M, const Tolerances& tol) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 12) throw UnsupportedDimension("is_weakly_degenerate: n > 12");

  WeakDegeneracyReport report;
  for_each_subset(n, [&](const IndexSet& alpha) {
    if (report.weakly_degenerate) return;
    if (is_singular(complementary_matrix(M, alpha), tol)) {
      report.weakly_degenerate = true;
      report.witness = DegeneracyWitness{DegeneracyKind::DegenerateCone, alpha, 0, std::nullopt};
    }
  });
  if (report.weakly_degenerate) return report;

  for (int k = 1; k <= n; ++k) {
    const Vec col = -M.col(k - 1);
    const double norm = col.norm();
    const Vec v = norm > 0 ? Vec(col / norm) : col;
    for (const Cone& facet : facet_family(M, k)) {
      if (facet.generators.cols() == 0) continue;  // apex holds only the origin
      if (cone_membership(facet.generators, v, tol)) {
        report.weakly_degenerate = true;
        report.witness =
            DegeneracyWitness{DegeneracyKind::ColumnInFacetFamily, IndexSet::empty_set(n), k, facet};
        return report;
      }
    }
  }
  return report;
}

bool is_lcp_stable(const Mat& M, const Tolerances& tol) {
  return !is_weakly_degenerate(M, tol).weakly_degenerate;
}

MinorsReport minors_sufficient(const Mat& M, const Tolerances& tol) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 10) throw UnsupportedDimension("minors_sufficient: n > 10");

  MinorsReport report;
  for (std::uint32_t rmask = 1; rmask < (1u << n); ++rmask) {
    const IndexSet rows = IndexSet::from_mask(rmask, n);
    for (std::uint32_t cmask = 1; cmask < (1u << n); ++cmask) {
      if (__builtin_popcount(cmask) != rows.size()) continue;
      const IndexSet cols = IndexSet::from_mask(cmask, n);
      if (is_singular(submatrix(M, rows, cols), tol)) {
        report.all_nonsingular = false;
        report.singular_minor = {rows, cols};
        return report;
      }
    }
  }
  return report;
}

namespace {

std::string remaining_symbols_label(const Mat& /*M*/, int k, std::uint32_t beta_mask, int n) {
  std::ostringstream os;
  os << "span[";
  bool first = true;
  for (int j = 1; j <= n; ++j) {
    if (j == k) continue;
    if (!first) os << ", ";
    first = false;
    if (beta_mask & (1u << (j - 1)))
      os << "-M_" << j;
    else
      os << "I_" << j;
  }
  os << "]";
  return os.str();
}

}  // namespace

StabilityReport stability_margin(const Mat& M, const Tolerances& tol) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 12) throw UnsupportedDimension("stability_margin: n > 12");

  StabilityReport report;
  report.facet_min_by_column.assign(n, 1.0);
  report.span_min_by_column.assign(n, 1.0);

  for (int k = 1; k <= n; ++k) {
    if (M.col(k - 1).norm() == 0.0) {
      report.zero_column = true;
      report.margin = 0.0;
      report.argmin = MarginTerm{MarginFamily::SpanDrop, k, "zero column", 0.0};
      return report;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const MarginTerm& term) {
    if (term.distance < best) {
      best = term.distance;
      report.argmin = term;
    }
  };

  for (int k = 1; k <= n; ++k) {
    const Vec v = Vec(-M.col(k - 1) / M.col(k - 1).norm());

    double facet_min = 1.0;
    for (const Cone& facet : facet_family(M, k)) {
      const double d = facet.generators.cols() == 0 ? v.norm() : cone_distance(facet.generators, v);
      facet_min = std::min(facet_min, d);
      consider(MarginTerm{MarginFamily::FacetCone, k, facet.label(), d});
    }
    report.facet_min_by_column[k - 1] = facet_min;

    double span_min = 1.0;
    const std::uint32_t others = ((1u << n) - 1u) & ~(1u << (k - 1));
    // Enumerate the identity/negated status of every column except k.
    for (std::uint32_t beta = others;; beta = (beta - 1) & others) {
      Mat G(n, n - 1);
      int c = 0;
      for (int j = 1; j <= n; ++j) {
        if (j == k) continue;
        if (beta & (1u << (j - 1)))
          G.col(c) = -M.col(j - 1);
        else
          G.col(c) = Vec::Unit(n, j - 1);
        ++c;
      }
      const double d = n == 1 ? v.norm() : span_distance(G, v);
      span_min = std::min(span_min, d);
      consider(MarginTerm{MarginFamily::SpanDrop, k, remaining_symbols_label(M, k, beta, n), d});
      if (beta == 0) break;
    }
    report.span_min_by_column[k - 1] = span_min;
  }

  report.margin = std::clamp(best, 0.0, 1.0);
  (void)tol;
  return report;
}

}  // namespace lcpatlas
