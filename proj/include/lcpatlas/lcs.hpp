#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lcpatlas/lcp_core.hpp"
#include "lcpatlas/types.hpp"

namespace lcpatlas {

// Differential system coupled to a complementarity constraint:
//   xi' = A xi + B z + E1 r
//   w   = C xi + D z + E2 s,   0 <= z  complementary to  w >= 0
// with scalar inputs r and s.
struct LcsModel {
  Mat A;   // n x n
  Mat B;   // n x m
  Mat C;   // m x n
  Mat D;   // m x m
  Vec E1;  // n
  Vec E2;  // m

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(D.rows()); }
  void validate() const;
};

// Data of the steady-state problem at fixed inputs: M = D - C inv(A) B,
// q = E2 s - C inv(A) E1 r.
struct LcpData {
  Mat M;
  Vec q;
};
LcpData lcp_data(const LcsModel& model, double r, double s, const Tolerances& tol = {});

// Unique solution of lcp(D, v); requires D to have positive principal minors.
Vec fD_inverse(const Mat& D, const Vec& v, const Tolerances& tol = {});

// Right-hand side xi' at state xi (solves the constraint for z internally).
Vec vector_field(const LcsModel& model, const Vec& xi, double r, double s,
                 const Tolerances& tol = {});

struct Equilibrium {
  IndexSet alpha;
  Vec z;
  Vec w;
  Vec x;  // piecewise-linear coordinate, x = w - z
  Vec xi;
};

struct EquilibriumSet {
  std::vector<Equilibrium> points;
  std::vector<DegenerateFamily> z_families;  // continua in z-space, if any
  bool continuum() const { return !z_families.empty(); }
};
EquilibriumSet equilibria(const LcsModel& model, double r, double s, const Tolerances& tol = {});

// Piecewise-constant input: r(t) = value of the last step with step.t <= t.
struct ScheduleStep {
  double t = 0.0;
  double r = 0.0;
};
double schedule_value(const std::vector<ScheduleStep>& schedule, double t);

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec> xi;
  std::vector<Vec> z;
  std::vector<double> r;
};

// Classical fourth-order integration with a fixed step; states are recorded
// every `record_stride` steps (and at both endpoints).
Trajectory simulate(const LcsModel& model, const Vec& xi0,
                    const std::vector<ScheduleStep>& schedule, double s, double t_end,
                    double dt = 1e-4, int record_stride = 10, const Tolerances& tol = {});

struct SweepPoint {
  double lambda = 0.0;
  std::optional<int> count;     // empty when a continuum is present
  bool continuum = false;
  bool skeleton_proximal = false;   // within one grid step of the critical set
  bool solution_on_boundary = false;
  bool singular_piece = false;
  std::vector<Vec> z;
  std::vector<Vec> x;  // same order as z
};

// Isolated solutions chained across the grid by nearest-neighbor matching in
// x, capped at 10 * |dq between grid points| * cond(M); a solution with no
// match starts a new branch.
struct SweepBranch {
  std::vector<std::pair<int, Vec>> points;  // (grid index, solution z)
};

struct BifurcationDiagram {
  Vec q0;
  Vec dir;
  std::vector<double> lambdas;
  std::vector<SweepPoint> points;
  std::vector<SweepBranch> branches;
};

// Solve lcp(M, q0 + lambda * dir) across the grid, flag proximity to the
// critical set, and stitch solutions into branches by nearest neighbor.
BifurcationDiagram sweep_1d(const Mat& M, const Vec& q0, const Vec& dir,
                            const std::vector<double>& lambdas, const Tolerances& tol = {});

}  // namespace lcpatlas
