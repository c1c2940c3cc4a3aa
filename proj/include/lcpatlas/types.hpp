#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcpatlas {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// ---- errors -------------------------------------------------------------

/// Malformed input: dimension mismatches, bad fields, non-finite entries.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Problem size outside the supported range for the requested operation.
struct UnsupportedDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: singular pivot, iteration cap, probe exhaustion, ...
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrixError : NumericError {
  using NumericError::NumericError;
};
struct NotPMatrixError : NumericError {
  using NumericError::NumericError;
};
struct NotR0Error : NumericError {
  using NumericError::NumericError;
};
struct PivotLimitError : NumericError {
  using NumericError::NumericError;
};
struct ProbeExhaustedError : NumericError {
  using NumericError::NumericError;
};
struct UnstableMatrixError : NumericError {
  using NumericError::NumericError;
};

// ---- tolerances ----------------------------------------------------------

/// Shared numeric policy. A square block is treated as singular when
/// sigma_min <= rank_rel_tol * sigma_max; nonnegativity of a combination
/// coefficient is accepted down to -sign_tol(q); duplicate solutions are
/// merged when their x representatives agree within dedup_tol.
struct Tolerances {
  double rank_rel = 1e-9;
  double sign_abs = 1e-8;   // scaled by (1 + ||q||)
  double dedup_x = 1e-7;
  double membership = 1e-9; // scaled by (1 + ||v||), cone membership residual

  double sign_tol(double q_norm) const { return sign_abs * (1.0 + q_norm); }
  double membership_tol(double v_norm) const {
    return membership * (1.0 + v_norm);
  }
};

// ---- index sets -----------------------------------------------------------

/// Strictly increasing subset of {1, ..., n}. Indices are 1-based to match
/// the usual complementarity conventions; mask() gives bit j-1 for member j.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<int> members, int n);

  static IndexSet empty_set(int n) { return IndexSet({}, n); }
  static IndexSet full(int n);
  static IndexSet from_mask(std::uint32_t mask, int n);
  static IndexSet singleton(int i, int n) { return IndexSet({i}, n); }

  int n() const { return n_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int i) const;
  const std::vector<int>& members() const { return members_; }
  IndexSet complement() const;
  std::uint32_t mask() const;
  std::string to_string() const;  // e.g. "{1,3}"

  bool operator==(const IndexSet& o) const {
    return n_ == o.n_ && members_ == o.members_;
  }
  bool operator!=(const IndexSet& o) const { return !(*this == o); }
  bool operator<(const IndexSet& o) const {  // by mask, for ordered maps
    return mask() < o.mask();
  }

 private:
  std::vector<int> members_;
  int n_ = 0;
};

/// Calls fn(alpha) for every subset of {1..n} in ascending mask order.
template <typename Fn>
void for_each_subset(int n, Fn&& fn) {
  const std::uint32_t count = 1u << n;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    fn(IndexSet::from_mask(mask, n));
  }
}

// ---- misc helpers ----------------------------------------------------------

/// Rows/columns of A restricted to the given 1-based index lists.
Mat submatrix(const Mat& A, const IndexSet& rows, const IndexSet& cols);
Vec subvector(const Vec& v, const IndexSet& idx);

/// Throws InputError if A has non-finite entries or zero size.
void check_matrix(const Mat& A, const std::string& name);
void check_vector(const Vec& v, const std::string& name);
void check_square(const Mat& A, const std::string& name);

/// sigma_min <= tol.rank_rel * sigma_max (rank-revealing singularity test).
bool is_singular(const Mat& A, const Tolerances& tol = {});

/// Componentwise max(v, 0).
Vec positive_part(const Vec& v);

}  // namespace lcpatlas
