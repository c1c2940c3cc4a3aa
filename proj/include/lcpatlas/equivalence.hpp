#pragma once

#include <vector>

#include "lcpatlas/lcp_core.hpp"
#include "lcpatlas/types.hpp"

namespace lcpatlas {

// Principal pivot transform with respect to beta (requires M[beta,beta]
// nonsingular). Swaps the roles of z_beta and w_beta.
Mat ppt(const Mat& M, const IndexSet& beta, const Tolerances& tol = {});

// Offset vector of the pivoted problem: q' such that lcp(ppt(M,beta), q')
// has the image solutions of lcp(M, q).
Vec pivot_q_forward(const Mat& M, const IndexSet& beta, const Vec& q, const Tolerances& tol = {});
// Inverse of the forward map (recovers q from q' without inverting the block).
Vec pivot_q_inverse(const Mat& M, const IndexSet& beta, const Vec& qp);

// Image of a solution z of lcp(M, q) under the pivot: z'_beta = w_beta,
// z' elsewhere = z.
Vec pivot_solution(const Mat& M, const IndexSet& beta, const Vec& z, const Vec& q);
// Sign flip on beta coordinates (the pivot acting on the piecewise-linear
// map's domain).
Vec pivot_x(const IndexSet& beta, const Vec& x);

// N(i,j) = M(p(i), p(j)) for a 1-based permutation p.
Mat permute_conjugate(const Mat& M, const std::vector<int>& perm);
Vec permute_vector(const Vec& q, const std::vector<int>& perm);

// inverse(D) * M * D for positive diagonal d.
Mat diag_conjugate(const Mat& M, const Vec& d);
// M * D for positive diagonal d (rescales the z variables).
Mat diag_scale(const Mat& M, const Vec& d);

// Angular description of a 2x2 matrix up to positive column scaling:
// theta1 is the counterclockwise angle of -M_col(1) from the ray pos e_1,
// theta2 that of -M_col(2) from pos e_2. r_i is 1, or 0 for a zero column
// (whose angle is undefined and stored as 0). The identity maps to
// (1, 1, pi, pi).
struct NormalForm2D {
  int r1 = 1;
  int r2 = 1;
  double theta1 = 0.0;  // in [0, 2*pi)
  double theta2 = 0.0;  // in [0, 2*pi)
};

NormalForm2D normal_form_2d(const Mat& M);
Mat matrix_from_normal_form(const NormalForm2D& nf);  // unit or zero columns
Mat matrix_from_angles(double theta1, double theta2);  // unit radii

}  // namespace lcpatlas
