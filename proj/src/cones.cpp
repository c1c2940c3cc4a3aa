#include "lcpatlas/cones.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace lcpatlas {

std::string GenSymbol::to_string() const {
  std::ostringstream os;
  if (kind == GenKind::Identity)
    os << "I_" << index;
  else
    os << "-M_" << index;
  return os.str();
}

std::string Cone::label() const {
  std::ostringstream os;
  os << "pos[";
  if (symbols.empty() && generators.cols() > 0) {
    os << generators.cols() << " generators";
  } else {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i) os << ", ";
      os << symbols[i].to_string();
    }
  }
  os << ']';
  return os.str();
}

// ---- nonnegative least squares ----------------------------------------------

NnlsResult nnls(const Mat& G, const Vec& v) {
  const int m = static_cast<int>(G.cols());
  NnlsResult out;
  out.p = Vec::Zero(m);
  if (m == 0) {
    out.residual = v.norm();
    return out;
  }
  const int max_iter = 100 * m;
  const double grad_tol = 1e-12 * std::max(1.0, v.norm()) * std::max(1.0, G.norm());

  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  Vec p = Vec::Zero(m);
  Vec resid = v;  // v - G p

  auto solve_passive = [&](const std::vector<bool>& set) {
    std::vector<int> idx;
    for (int j = 0; j < m; ++j)
      if (set[static_cast<std::size_t>(j)]) idx.push_back(j);
    Vec s = Vec::Zero(m);
    if (idx.empty()) return s;
    Mat Gp(G.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) Gp.col(static_cast<Eigen::Index>(c)) = G.col(idx[c]);
    Vec sol = Gp.colPivHouseholderQr().solve(v);
    for (std::size_t c = 0; c < idx.size(); ++c) s(idx[c]) = sol(static_cast<Eigen::Index>(c));
    return s;
  };

  int iter = 0;
  while (iter < max_iter) {
    Vec grad = G.transpose() * resid;
    int best = -1;
    double best_g = grad_tol;
    for (int j = 0; j < m; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > best_g) {
        best_g = grad(j);
        best = j;
      }
    }
    if (best < 0) break;  // KKT satisfied
    passive[static_cast<std::size_t>(best)] = true;

    Vec s = solve_passive(passive);
    // Inner loop: back off along p -> s until the passive set is feasible.
    while (true) {
      ++iter;
      double alpha = 1.0;
      bool clipped = false;
      for (int j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) {
          const double denom = p(j) - s(j);
          if (denom > 0) alpha = std::min(alpha, p(j) / denom);
          clipped = true;
        }
      }
      if (!clipped) {
        p = s;
        break;
      }
      p += alpha * (s - p);
      for (int j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && p(j) <= 1e-14) {
          p(j) = 0.0;
          passive[static_cast<std::size_t>(j)] = false;
        }
      }
      s = solve_passive(passive);
      if (iter >= max_iter) break;
    }
    resid = v - G * p;
    ++iter;
  }

  out.p = p;
  out.residual = resid.norm();
  out.iterations = iter;
  out.converged = iter < max_iter;
  return out;
}

std::optional<Vec> cone_membership(const Mat& generators, const Vec& v,
                                   const Tolerances& tol) {
  const int m = static_cast<int>(generators.cols());
  // Drop zero generators; pos of a zero vector is the apex {0}.
  std::vector<int> keep;
  for (int j = 0; j < m; ++j)
    if (generators.col(j).norm() > 0.0) keep.push_back(j);
  Mat G(generators.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) G.col(static_cast<Eigen::Index>(c)) = generators.col(keep[c]);

  NnlsResult r = nnls(G, v);
  if (r.residual > tol.membership_tol(v.norm())) return std::nullopt;
  Vec p = Vec::Zero(m);
  for (std::size_t c = 0; c < keep.size(); ++c) p(keep[c]) = std::max(0.0, r.p(static_cast<Eigen::Index>(c)));
  return p;
}

double cone_distance(const Mat& generators, const Vec& v) {
  if (generators.cols() == 0) return v.norm();
  return nnls(generators, v).residual;
}

double span_distance(const Mat& generators, const Vec& v) {
  if (generators.cols() == 0) return v.norm();
  Vec coef = generators.colPivHouseholderQr().solve(v);
  return (v - generators * coef).norm();
}

// ---- facets -------------------------------------------------------------------

namespace {

std::vector<GenSymbol> cone_symbols(const IndexSet& alpha, int n) {
  std::vector<GenSymbol> sym;
  sym.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    if (alpha.contains(j))
      sym.push_back({GenKind::NegatedColumn, j});
    else
      sym.push_back({GenKind::Identity, j});
  }
  return sym;
}

Vec symbol_column(const Mat& M, const GenSymbol& s) {
  const int n = static_cast<int>(M.rows());
  if (s.kind == GenKind::Identity) {
    Vec e = Vec::Zero(n);
    e(s.index - 1) = 1.0;
    return e;
  }
  return -M.col(s.index - 1);
}

Cone cone_from_symbols(const Mat& M, std::vector<GenSymbol> sym,
                       std::optional<IndexSet> alpha, std::optional<int> dropped) {
  Cone c;
  c.generators.resize(M.rows(), static_cast<Eigen::Index>(sym.size()));
  for (std::size_t j = 0; j < sym.size(); ++j)
    c.generators.col(static_cast<Eigen::Index>(j)) = symbol_column(M, sym[j]);
  c.symbols = std::move(sym);
  c.alpha = std::move(alpha);
  c.dropped = dropped;
  return c;
}

}  // namespace

std::vector<Cone> facets_of_cone(const Mat& M, const IndexSet& alpha) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  std::vector<GenSymbol> all = cone_symbols(alpha, n);
  std::vector<Cone> facets;
  facets.reserve(static_cast<std::size_t>(n));
  for (int drop = 1; drop <= n; ++drop) {
    std::vector<GenSymbol> sym;
    for (const auto& s : all)
      if (s.index != drop) sym.push_back(s);
    facets.push_back(cone_from_symbols(M, std::move(sym), alpha, drop));
  }
  return facets;
}

std::vector<Cone> facet_family(const Mat& M, int k) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 16) throw UnsupportedDimension("facet_family: n > 16");
  if (k < 1 || k > n) throw InputError("facet_family: k out of range");

  std::map<std::vector<GenSymbol>, Cone> unique;
  for_each_subset(n, [&](const IndexSet& alpha) {
    if (alpha.contains(k)) return;
    for (Cone& f : facets_of_cone(M, alpha)) {
      std::vector<GenSymbol> key = f.symbols;
      std::sort(key.begin(), key.end());
      unique.emplace(std::move(key), std::move(f));
    }
  });

  std::vector<Cone> out;
  out.reserve(unique.size());
  for (auto& [key, cone] : unique) out.push_back(std::move(cone));
  return out;
}

double skeleton_distance(const Mat& M, const Vec& q) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 16) throw UnsupportedDimension("skeleton_distance: n > 16");
  std::map<std::vector<GenSymbol>, double> seen;
  double best = q.norm();  // distance to the apex, a face of everything
  for_each_subset(n, [&](const IndexSet& alpha) {
    for (Cone& f : facets_of_cone(M, alpha)) {
      std::vector<GenSymbol> key = f.symbols;
      std::sort(key.begin(), key.end());
      if (seen.count(key)) continue;
      const double d = cone_distance(f.generators, q);
      seen.emplace(std::move(key), d);
      best = std::min(best, d);
    }
  });
  return best;
}

bool in_skeleton(const Mat& M, const Vec& q, double tol) {
  return skeleton_distance(M, q) <= tol * (1.0 + q.norm());
}

// ---- planar cells --------------------------------------------------------------

Vec Sector2D::midpoint_dir() const {
  Vec d(2);
  const double a = midpoint();
  d << std::cos(a), std::sin(a);
  return d;
}

std::vector<Sector2D> cells_2d(const Mat& M) {
  check_square(M, "M");
  if (M.rows() != 2) throw UnsupportedDimension("cells_2d: n must be 2");
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  constexpr double kMergeTol = 1e-9;  // radians

  std::vector<double> angles{0.0, kTwoPi / 4.0};  // e_1, e_2
  for (int j = 0; j < 2; ++j) {
    const Vec c = -M.col(j);
    if (c.norm() == 0.0) continue;  // zero column: no ray
    double a = std::atan2(c(1), c(0));
    if (a < 0) a += kTwoPi;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> rays;
  for (double a : angles) {
    if (rays.empty() || a - rays.back() > kMergeTol) rays.push_back(a);
  }
  // A ray within tolerance of 2*pi coincides with the ray at 0.
  if (rays.size() > 1 && kTwoPi - rays.back() <= kMergeTol) rays.pop_back();

  std::vector<Sector2D> cells;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    Sector2D s;
    s.start = rays[i];
    s.end = (i + 1 < rays.size()) ? rays[i + 1] : rays[0] + kTwoPi;
    cells.push_back(s);
  }
  return cells;
}

}  // namespace lcpatlas
