#include "lcpatlas/lcp_core.hpp"

#include "lcpatlas/cones.hpp"
#include "lcpatlas/parallel.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace lcpatlas {

LcpInstance::LcpInstance(Mat m, Vec rhs, Tolerances t) : M(std::move(m)), q(std::move(rhs)), tol(t) {
  check_square(M, "M");
  check_vector(q, "q");
  if (M.rows() != q.size()) throw InputError("LcpInstance: M and q dimensions differ");
}

Mat complementary_matrix(const Mat& M, const IndexSet& alpha) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (alpha.n() != n) throw InputError("complementary_matrix: alpha size mismatch");
  Mat C = Mat::Identity(n, n);
  for (int j : alpha.members()) C.col(j - 1) = -M.col(j - 1);
  return C;
}

Mat orthant_sign_matrix(const IndexSet& alpha, int n) {
  Mat S = Mat::Identity(n, n);
  for (int j : alpha.members()) S(j - 1, j - 1) = -1.0;
  return S;
}

Vec pwl_map(const Mat& M, const Vec& x) {
  check_square(M, "M");
  if (M.rows() != x.size()) throw InputError("pwl_map: dimension mismatch");
  return positive_part(x) - M * positive_part(-x);
}

Vec z_from_x(const Vec& x) { return positive_part(-x); }

Vec x_from_z(const Mat& M, const Vec& q, const Vec& z) {
  return (M - Mat::Identity(M.rows(), M.cols())) * z + q;
}

double lcp_residual(const Mat& M, const Vec& q, const Vec& z) {
  const Vec w = M * z + q;
  double r = 0.0;
  for (int i = 0; i < z.size(); ++i) {
    r = std::max(r, -z(i));
    r = std::max(r, -w(i));
    r = std::max(r, std::abs(z(i) * w(i)));
  }
  return r;
}

namespace {

struct AlphaOutcome {
  std::optional<IsolatedSolution> isolated;
  std::optional<DegenerateFamily> family;
};

AlphaOutcome examine_support(const LcpInstance& pr, const IndexSet& alpha) {
  AlphaOutcome out;
  const int n = pr.n();
  const Mat C = complementary_matrix(pr.M, alpha);
  Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const bool singular = sv(n - 1) <= pr.tol.rank_rel * std::max(smax, 1e-300);
  const double sign_tol = pr.tol.sign_tol(pr.q.norm());

  if (!singular) {
    const Vec p = svd.solve(pr.q);
    if ((p.array() >= -sign_tol).all()) {
      IsolatedSolution s;
      s.alpha = alpha;
      s.z = Vec::Zero(n);
      for (int j : alpha.members()) s.z(j - 1) = std::max(0.0, p(j - 1));
      s.x = x_from_z(pr.M, pr.q, s.z);
      s.w = pr.M * s.z + pr.q;
      out.isolated = std::move(s);
    }
    return out;
  }

  // Singular cone: report a family when q lies in it.
  const auto p = cone_membership(C, pr.q, pr.tol);
  if (!p) return out;
  DegenerateFamily fam;
  fam.alpha = alpha;
  fam.particular_z = Vec::Zero(n);
  for (int j : alpha.members()) fam.particular_z(j - 1) = (*p)(j - 1);
  fam.particular_x = x_from_z(pr.M, pr.q, fam.particular_z);
  // Kernel directions of C, mapped to x space through the orthant signs.
  const Mat S = orthant_sign_matrix(alpha, n);
  for (int k = 0; k < n; ++k) {
    if (sv(k) <= pr.tol.rank_rel * std::max(smax, 1e-300)) {
      fam.nullspace_generators.push_back(S * svd.matrixV().col(k));
    }
  }
  out.family = std::move(fam);
  return out;
}

}  // namespace

SolutionSet solve_enumerate(const LcpInstance& problem) {
  const int n = problem.n();
  if (n > 16) throw UnsupportedDimension("solve_enumerate: n > 16");

  const int count = 1 << n;
  std::vector<AlphaOutcome> outcomes(static_cast<std::size_t>(count));
  parallel_for(count, [&](int mask) {
    outcomes[static_cast<std::size_t>(mask)] =
        examine_support(problem, IndexSet::from_mask(static_cast<std::uint32_t>(mask), n));
  }, /*grain=*/64);

  SolutionSet set;
  for (auto& oc : outcomes) {
    if (oc.isolated) {
      bool dup = false;
      for (const auto& have : set.isolated) {
        if ((have.x - oc.isolated->x).lpNorm<Eigen::Infinity>() <= problem.tol.dedup_x) {
          dup = true;
          break;
        }
      }
      if (!dup) set.isolated.push_back(std::move(*oc.isolated));
    }
    if (oc.family) set.degenerate.push_back(std::move(*oc.family));
  }

  // A nonsingular piece can contribute a point that is really the endpoint of
  // a continuum family: drop it when it lies in the family's affine hull and
  // in the closure of the family's orthant (the two together certify
  // membership in the family segment).
  if (!set.degenerate.empty()) {
    const double tol = problem.tol.dedup_x;
    auto in_family = [&](const IsolatedSolution& s) {
      for (const auto& fam : set.degenerate) {
        Vec r = s.x - fam.particular_x;
        for (const auto& g : fam.nullspace_generators) r -= g * g.dot(r);
        if (r.lpNorm<Eigen::Infinity>() > tol * (1.0 + s.x.lpNorm<Eigen::Infinity>())) continue;
        bool in_orthant = true;
        for (int j = 1; j <= n; ++j) {
          const double xj = s.x(j - 1);
          if (fam.alpha.contains(j) ? xj > tol : xj < -tol) {
            in_orthant = false;
            break;
          }
        }
        if (in_orthant) return true;
      }
      return false;
    };
    std::erase_if(set.isolated, in_family);
  }
  return set;
}

}  // namespace lcpatlas
