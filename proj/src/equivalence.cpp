#include "lcpatlas/equivalence.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace lcpatlas {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Mat pivot_block_inverse(const Mat& M, const IndexSet& beta, const Tolerances& tol) {
  const Mat A = submatrix(M, beta, beta);
  if (is_singular(A, tol))
    throw SingularMatrixError("ppt: singular pivot block at beta " + beta.to_string());
  return A.inverse();
}

}  // namespace

Mat ppt(const Mat& M, const IndexSet& beta, const Tolerances& tol) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  if (beta.n() != n) throw InputError("ppt: beta ambient dimension mismatch");
  if (beta.empty()) return M;

  const IndexSet bc = beta.complement();
  const Mat Ainv = pivot_block_inverse(M, beta, tol);
  const Mat B = submatrix(M, beta, bc);
  const Mat C = submatrix(M, bc, beta);
  const Mat D = submatrix(M, bc, bc);

  Mat N(n, n);
  auto put = [&](const IndexSet& rows, const IndexSet& cols, const Mat& block) {
    for (int i = 0; i < rows.size(); ++i)
      for (int j = 0; j < cols.size(); ++j)
        N(rows.members()[i] - 1, cols.members()[j] - 1) = block(i, j);
  };
  put(beta, beta, Ainv);
  put(beta, bc, -Ainv * B);
  put(bc, beta, C * Ainv);
  put(bc, bc, D - C * Ainv * B);
  return N;
}

Vec pivot_q_forward(const Mat& M, const IndexSet& beta, const Vec& q, const Tolerances& tol) {
  check_square(M, "M");
  if (M.rows() != q.size()) throw InputError("pivot_q_forward: dimension mismatch");
  if (beta.empty()) return q;
  const IndexSet bc = beta.complement();
  const Mat Ainv = pivot_block_inverse(M, beta, tol);
  const Vec qb = subvector(q, beta);
  const Vec tmp = Ainv * qb;

  Vec out(q.size());
  for (int i = 0; i < beta.size(); ++i) out(beta.members()[i] - 1) = -tmp(i);
  const Mat C = submatrix(M, bc, beta);
  const Vec tail = subvector(q, bc) - C * tmp;
  for (int i = 0; i < bc.size(); ++i) out(bc.members()[i] - 1) = tail(i);
  return out;
}

Vec pivot_q_inverse(const Mat& M, const IndexSet& beta, const Vec& qp) {
  check_square(M, "M");
  if (M.rows() != qp.size()) throw InputError("pivot_q_inverse: dimension mismatch");
  if (beta.empty()) return qp;
  const IndexSet bc = beta.complement();
  const Mat A = submatrix(M, beta, beta);
  const Mat C = submatrix(M, bc, beta);
  const Vec qpb = subvector(qp, beta);

  Vec out(qp.size());
  const Vec head = -A * qpb;
  for (int i = 0; i < beta.size(); ++i) out(beta.members()[i] - 1) = head(i);
  const Vec tail = subvector(qp, bc) - C * qpb;
  for (int i = 0; i < bc.size(); ++i) out(bc.members()[i] - 1) = tail(i);
  return out;
}

Vec pivot_solution(const Mat& M, const IndexSet& beta, const Vec& z, const Vec& q) {
  check_square(M, "M");
  if (M.rows() != z.size() || M.rows() != q.size())
    throw InputError("pivot_solution: dimension mismatch");
  const Vec w = M * z + q;
  Vec out = z;
  for (int j : beta.members()) out(j - 1) = w(j - 1);
  return out;
}

Vec pivot_x(const IndexSet& beta, const Vec& x) {
  Vec out = x;
  for (int j : beta.members()) out(j - 1) = -x(j - 1);
  return out;
}

namespace {

void check_perm(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) throw InputError("permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 1 || v > n || seen[v - 1]) throw InputError("invalid permutation");
    seen[v - 1] = true;
  }
}

}  // namespace

Mat permute_conjugate(const Mat& M, const std::vector<int>& perm) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  check_perm(perm, n);
  Mat N(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) N(i, j) = M(perm[i] - 1, perm[j] - 1);
  return N;
}

Vec permute_vector(const Vec& q, const std::vector<int>& perm) {
  const int n = static_cast<int>(q.size());
  check_perm(perm, n);
  Vec out(n);
  for (int i = 0; i < n; ++i) out(i) = q(perm[i] - 1);
  return out;
}

namespace {

void check_positive_diag(const Vec& d, int n) {
  if (d.size() != n) throw InputError("diagonal size mismatch");
  for (int i = 0; i < n; ++i)
    if (!(d(i) > 0)) throw InputError("diagonal entries must be positive");
}

}  // namespace

Mat diag_conjugate(const Mat& M, const Vec& d) {
  check_square(M, "M");
  const int n = static_cast<int>(M.rows());
  check_positive_diag(d, n);
  return d.cwiseInverse().asDiagonal() * M * d.asDiagonal();
}

Mat diag_scale(const Mat& M, const Vec& d) {
  check_square(M, "M");
  check_positive_diag(d, static_cast<int>(M.rows()));
  return M * d.asDiagonal();
}

NormalForm2D normal_form_2d(const Mat& M) {
  check_square(M, "M");
  if (M.rows() != 2) throw UnsupportedDimension("normal_form_2d: n must be 2");
  NormalForm2D nf;
  auto wrap = [](double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
  };
  nf.r1 = (M.col(0).norm() > 0.0) ? 1 : 0;
  nf.r2 = (M.col(1).norm() > 0.0) ? 1 : 0;
  if (nf.r1) nf.theta1 = wrap(std::atan2(-M(1, 0), -M(0, 0)));
  if (nf.r2) nf.theta2 = wrap(std::atan2(-M(1, 1), -M(0, 1)) - kTwoPi / 4.0);
  return nf;
}

Mat matrix_from_normal_form(const NormalForm2D& nf) {
  Mat M(2, 2);
  M(0, 0) = -nf.r1 * std::cos(nf.theta1);
  M(1, 0) = -nf.r1 * std::sin(nf.theta1);
  M(0, 1) = nf.r2 * std::sin(nf.theta2);
  M(1, 1) = -nf.r2 * std::cos(nf.theta2);
  return M;
}

Mat matrix_from_angles(double theta1, double theta2) {
  NormalForm2D nf;
  nf.theta1 = theta1;
  nf.theta2 = theta2;
  return matrix_from_normal_form(nf);
}

}  // namespace lcpatlas
