#include "lcpatlas/analysis.hpp"

#include "lcpatlas/cones.hpp"
#include "lcpatlas/simplex_lp.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace lcpatlas {

R0Report is_R0(const Mat& M, const Tolerances& tol) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 16) throw UnsupportedDimension("is_R0: n > 16");

  R0Report report;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const IndexSet alpha = IndexSet::from_mask(mask, n);
    const Mat C = complementary_matrix(M, alpha);
    // max 1'p s.t. C p = 0, p + s = 1, p,s >= 0
    Mat A = Mat::Zero(2 * n, 2 * n);
    A.topLeftCorner(n, n) = C;
    A.bottomLeftCorner(n, n) = Mat::Identity(n, n);
    A.bottomRightCorner(n, n) = Mat::Identity(n, n);
    Vec b = Vec::Zero(2 * n);
    b.tail(n).setOnes();
    Vec c = Vec::Zero(2 * n);
    c.head(n) = -Vec::Ones(n);

    const LpResult lp = solve_lp(A, b, c);
    if (lp.status != LpStatus::Optimal) throw NumericError("is_R0: kernel program failed");
    if (-lp.objective > 1e-7 * n) {
      report.is_r0 = false;
      report.witness_alpha = alpha;
      report.witness_p = lp.x.head(n);
      (void)tol;
      return report;
    }
  }
  return report;
}

int index_at(const Mat& M, const IndexSet& alpha, const Tolerances& tol) {
  check_square(M, "M");
  if (alpha.empty()) return 1;
  const Mat sub = submatrix(M, alpha, alpha);
  if (is_singular(sub, tol))
    throw SingularMatrixError("index_at: vanishing principal minor for alpha " + alpha.to_string());
  const double det = sub.determinant();
  return det > 0 ? 1 : -1;
}

namespace {

// Deterministic unit-sphere sampler (explicit Box-Muller so results do not
// depend on the standard library's normal_distribution implementation).
class SphereSampler {
 public:
  explicit SphereSampler(std::uint64_t seed) : rng_(seed) {}

  Vec draw(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    const double norm = v.norm();
    return norm > 0 ? Vec(v / norm) : draw(n);
  }

 private:
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }
  double uniform() {
    return static_cast<double>(rng_()) / (static_cast<double>(std::mt19937_64::max()) + 1.0);
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

DegreeReport degree(const Mat& M, std::uint64_t seed, const Tolerances& tol) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  const R0Report r0 = is_R0(M, tol);
  if (!r0.is_r0)
    throw NotR0Error("degree: matrix is not R0 (kernel witness at alpha " +
                     r0.witness_alpha->to_string() + ")");

  SphereSampler sampler(seed);
  DegreeReport report;
  constexpr int kMaxRejects = 1000;
  for (int rejects = 0; rejects <= kMaxRejects; ++rejects) {
    const Vec q = sampler.draw(n);
    if (in_skeleton(M, q, 1e-9)) continue;
    const SolutionSet sols = solve_enumerate(LcpInstance(M, q, tol));
    if (sols.continuum()) continue;
    bool boundary = false;
    for (const auto& s : sols.isolated) {
      if (s.x.cwiseAbs().minCoeff() <= 1e-9 * (1.0 + s.x.norm())) {
        boundary = true;
        break;
      }
    }
    if (boundary) continue;

    report.probe_q = q;
    report.probes_rejected = rejects;
    for (const auto& s : sols.isolated) {
      const int idx = index_at(M, s.alpha, tol);
      report.solution_indices.emplace_back(s.alpha, idx);
      report.degree += idx;
    }
    return report;
  }
  throw ProbeExhaustedError("degree: no generic probe found after 1000 rejections");
}

std::vector<std::pair<IndexSet, double>> all_principal_minors(const Mat& M) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 16) throw UnsupportedDimension("all_principal_minors: n > 16");
  std::vector<std::pair<IndexSet, double>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const IndexSet alpha = IndexSet::from_mask(mask, n);
    out.emplace_back(alpha, submatrix(M, alpha, alpha).determinant());
  }
  return out;
}

bool is_P(const Mat& M, const Tolerances& tol) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 16) throw UnsupportedDimension("is_P: n > 16");
  (void)tol;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const IndexSet alpha = IndexSet::from_mask(mask, n);
    if (submatrix(M, alpha, alpha).determinant() <= 0.0) return false;
  }
  return true;
}

namespace {

// Minimum of x'Mx over the relative interior stationary points of one
// simplex face, appended to `values` when the face carries one.
void face_candidates(const Mat& M, const IndexSet& face, std::vector<double>& values) {
  const int k = face.size();
  const Mat Ms = submatrix(M, face, face);
  if (k == 1) {
    values.push_back(Ms(0, 0));
    return;
  }
  const Mat H = Ms + Ms.transpose();
  // Stationarity on the affine hull: H x = lambda 1, 1'x = 1.
  Mat K = Mat::Zero(k + 1, k + 1);
  K.topLeftCorner(k, k) = H;
  K.topRightCorner(k, 1) = -Vec::Ones(k);
  K.bottomLeftCorner(1, k) = Vec::Ones(k).transpose();
  Vec rhs = Vec::Zero(k + 1);
  rhs(k) = 1.0;

  Eigen::JacobiSVD<Mat> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double rank_tol = 1e-11 * std::max(smax, 1e-300);
  int rank = 0;
  for (int i = 0; i <= k; ++i)
    if (sv(i) > rank_tol) ++rank;

  const Vec sol = svd.solve(rhs);
  if ((K * sol - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) return;  // no stationary point
  Vec x = sol.head(k);
  const auto value_at = [&](const Vec& y) { return y.dot(Ms * y); };

  const int nullity = k + 1 - rank;
  if (nullity == 0) {
    if ((x.array() >= -1e-12).all()) values.push_back(value_at(x));
    return;
  }
  // The quadratic is constant on the stationary set; it counts only if that
  // set meets the nonnegative part of the face.
  if (nullity == 1) {
    const Vec d = svd.matrixV().col(k).head(k);
    // Feasible t-interval of x + t d >= 0.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool empty = false;
    for (int i = 0; i < k; ++i) {
      if (std::abs(d(i)) < 1e-14) {
        if (x(i) < -1e-12) empty = true;
      } else if (d(i) > 0) {
        lo = std::max(lo, -x(i) / d(i));
      } else {
        hi = std::min(hi, -x(i) / d(i));
      }
    }
    if (!empty && lo <= hi + 1e-12) values.push_back(value_at(x));
    return;
  }
  // Nullity >= 2 on a face of size <= 3: the form is constant on the whole
  // affine hull; the barycenter evaluates it inside the face.
  values.push_back(value_at(Vec::Ones(k) / k));
}

}  // namespace

bool is_strictly_copositive_small(const Mat& M) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (n > 3) throw UnsupportedDimension("is_strictly_copositive_small: n > 3");

  std::vector<double> values;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
    face_candidates(M, IndexSet::from_mask(mask, n), values);
  double min_value = std::numeric_limits<double>::infinity();
  for (double v : values) min_value = std::min(min_value, v);
  return min_value > 0.0;
}

SingularityFlags singularity_flags(const Mat& M, const Vec& x, double boundary_tol,
                                   const Tolerances& tol) {
  check_square(M, "M");
  if (M.rows() != x.size()) throw InputError("singularity_flags: dimension mismatch");
  const int n = static_cast<int>(x.size());

  SingularityFlags flags;
  const double scale = boundary_tol * (1.0 + x.norm());
  for (int i = 0; i < n; ++i)
    if (std::abs(x(i)) <= scale) flags.on_orthant_boundary = true;

  // Containing orthant (ties resolved toward the negative side); the active
  // piece of the pwl map is the complementary matrix of -M there.
  std::vector<int> members;
  for (int i = 0; i < n; ++i)
    if (x(i) < 0 || std::abs(x(i)) <= scale) members.push_back(i + 1);
  const IndexSet alpha(members, n);
  const Mat piece = complementary_matrix(-M, alpha);
  if (is_singular(piece, tol)) flags.singular_piece = alpha;
  return flags;
}

}  // namespace lcpatlas
