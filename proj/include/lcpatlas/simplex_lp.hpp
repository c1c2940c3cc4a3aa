#pragma once

#include "lcpatlas/types.hpp"

namespace lcpatlas {

// Dense two-phase primal simplex for small standard-form programs
//   min c'x  s.t.  A x = b, x >= 0,
// with Bland's anti-cycling rule. Sized for the tiny feasibility programs
// used by the kernel and copositivity tests (tens of variables).

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  Vec x;
  double objective = 0.0;
};

LpResult solve_lp(const Mat& A, const Vec& b, const Vec& c);

}  // namespace lcpatlas
