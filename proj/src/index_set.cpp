#include "lcpatlas/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcpatlas {

IndexSet::IndexSet(std::vector<int> members, int n) : members_(std::move(members)), n_(n) {
  if (n < 0 || n > 31) throw InputError("IndexSet: n out of range");
  int prev = 0;
  for (int i : members_) {
    if (i <= prev || i > n) throw InputError("IndexSet: members must be strictly increasing in 1..n");
    prev = i;
  }
}

IndexSet IndexSet::full(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i + 1;
  return IndexSet(std::move(m), n);
}

IndexSet IndexSet::from_mask(std::uint32_t mask, int n) {
  std::vector<int> m;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) m.push_back(i + 1);
  return IndexSet(std::move(m), n);
}

bool IndexSet::contains(int i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

IndexSet IndexSet::complement() const {
  std::vector<int> m;
  for (int i = 1; i <= n_; ++i)
    if (!contains(i)) m.push_back(i);
  return IndexSet(std::move(m), n_);
}

std::uint32_t IndexSet::mask() const {
  std::uint32_t mask = 0;
  for (int i : members_) mask |= 1u << (i - 1);
  return mask;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ',';
    os << members_[i];
  }
  os << '}';
  return os.str();
}

Mat submatrix(const Mat& A, const IndexSet& rows, const IndexSet& cols) {
  Mat out(rows.size(), cols.size());
  for (int r = 0; r < rows.size(); ++r)
    for (int c = 0; c < cols.size(); ++c)
      out(r, c) = A(rows.members()[static_cast<std::size_t>(r)] - 1,
                    cols.members()[static_cast<std::size_t>(c)] - 1);
  return out;
}

Vec subvector(const Vec& v, const IndexSet& idx) {
  Vec out(idx.size());
  for (int i = 0; i < idx.size(); ++i)
    out(i) = v(idx.members()[static_cast<std::size_t>(i)] - 1);
  return out;
}

void check_matrix(const Mat& A, const std::string& name) {
  if (A.rows() == 0 || A.cols() == 0) throw InputError(name + ": empty matrix");
  if (!A.allFinite()) throw InputError(name + ": non-finite entries");
}

void check_vector(const Vec& v, const std::string& name) {
  if (v.size() == 0) throw InputError(name + ": empty vector");
  if (!v.allFinite()) throw InputError(name + ": non-finite entries");
}

void check_square(const Mat& A, const std::string& name) {
  check_matrix(A, name);
  if (A.rows() != A.cols()) throw InputError(name + ": expected a square matrix");
}

bool is_singular(const Mat& A, const Tolerances& tol) {
  if (A.rows() == 0 || A.cols() == 0) return false;
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (A.rows() != A.cols()) return smin <= tol.rank_rel * std::max(smax, 1e-300);
  return smin <= tol.rank_rel * std::max(smax, 1e-300);
}

Vec positive_part(const Vec& v) { return v.cwiseMax(0.0); }

}  // namespace lcpatlas
