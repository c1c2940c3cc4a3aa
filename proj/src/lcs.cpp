#include "lcpatlas/lcs.hpp"

#include "lcpatlas/analysis.hpp"
#include "lcpatlas/cones.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcpatlas {

void LcsModel::validate() const {
  const int nn = n();
  const int mm = m();
  if (A.rows() != nn || A.cols() != nn) throw InputError("model: A must be square");
  if (D.rows() != mm || D.cols() != mm) throw InputError("model: D must be square");
  if (B.rows() != nn || B.cols() != mm) throw InputError("model: B must be n x m");
  if (C.rows() != mm || C.cols() != nn) throw InputError("model: C must be m x n");
  if (E1.size() != nn) throw InputError("model: E1 must have length n");
  if (E2.size() != mm) throw InputError("model: E2 must have length m");
  check_matrix(A, "A");
  check_matrix(B, "B");
  check_matrix(C, "C");
  check_matrix(D, "D");
  check_vector(E1, "E1");
  check_vector(E2, "E2");
}

LcpData lcp_data(const LcsModel& model, double r, double s, const Tolerances& tol) {
  model.validate();
  if (is_singular(model.A, tol))
    throw SingularMatrixError("lcp_data: singular state matrix A");
  const auto lu = model.A.partialPivLu();
  LcpData data;
  data.M = model.D - model.C * lu.solve(model.B);
  data.q = model.E2 * s - model.C * lu.solve(Vec(model.E1 * r));
  return data;
}

namespace {

bool positive_diagonal_only(const Mat& D) {
  const int m = static_cast<int>(D.rows());
  for (int i = 0; i < m; ++i) {
    if (!(D(i, i) > 0)) return false;
    for (int j = 0; j < m; ++j)
      if (i != j && D(i, j) != 0.0) return false;
  }
  return true;
}

Vec unique_solve(const Mat& D, const Vec& v, bool diag_fast, const Tolerances& tol) {
  if (diag_fast) {
    Vec z(v.size());
    for (int i = 0; i < v.size(); ++i) z(i) = std::max(0.0, -v(i) / D(i, i));
    return z;
  }
  const LemkeResult res = solve_lemke(LcpInstance(D, v, tol));
  if (res.status != LemkeStatus::Solved)
    throw NumericError("constraint solve: pivoting terminated on a ray");
  return res.z;
}

}  // namespace

Vec fD_inverse(const Mat& D, const Vec& v, const Tolerances& tol) {
  check_square(D, "D");
  if (D.rows() != v.size()) throw InputError("fD_inverse: dimension mismatch");
  if (D.rows() <= 16 && !is_P(D, tol))
    throw NotPMatrixError("fD_inverse: D lacks positive principal minors; the solution map is not single-valued");
  return unique_solve(D, v, positive_diagonal_only(D), tol);
}

Vec vector_field(const LcsModel& model, const Vec& xi, double r, double s,
                 const Tolerances& tol) {
  model.validate();
  if (xi.size() != model.n()) throw InputError("vector_field: state dimension mismatch");
  const Vec z = fD_inverse(model.D, Vec(model.C * xi + model.E2 * s), tol);
  return model.A * xi + model.B * z + model.E1 * r;
}

EquilibriumSet equilibria(const LcsModel& model, double r, double s, const Tolerances& tol) {
  const LcpData data = lcp_data(model, r, s, tol);
  const SolutionSet sols = solve_enumerate(LcpInstance(data.M, data.q, tol));
  const auto lu = model.A.partialPivLu();

  EquilibriumSet set;
  for (const auto& sol : sols.isolated) {
    Equilibrium eq;
    eq.alpha = sol.alpha;
    eq.z = sol.z;
    eq.w = sol.w;
    eq.x = sol.w - sol.z;
    eq.xi = -lu.solve(Vec(model.B * sol.z + model.E1 * r));
    set.points.push_back(std::move(eq));
  }
  set.z_families = sols.degenerate;
  return set;
}

double schedule_value(const std::vector<ScheduleStep>& schedule, double t) {
  if (schedule.empty()) throw InputError("schedule: at least one step required");
  double value = schedule.front().r;
  for (const auto& step : schedule) {
    if (step.t <= t) value = step.r;
    else break;
  }
  return value;
}

Trajectory simulate(const LcsModel& model, const Vec& xi0,
                    const std::vector<ScheduleStep>& schedule, double s, double t_end,
                    double dt, int record_stride, const Tolerances& tol) {
  model.validate();
  if (xi0.size() != model.n()) throw InputError("simulate: state dimension mismatch");
  if (!(dt > 0) || !(t_end >= 0)) throw InputError("simulate: need dt > 0 and t_end >= 0");
  if (record_stride < 1) throw InputError("simulate: record_stride must be >= 1");
  if (schedule.empty()) throw InputError("simulate: empty input schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i].t > schedule[i - 1].t))
      throw InputError("simulate: schedule times must increase");
  if (model.m() <= 16 && !is_P(model.D, tol))
    throw NotPMatrixError("simulate: D lacks positive principal minors");

  const bool diag_fast = positive_diagonal_only(model.D);
  auto solve_z = [&](const Vec& xi) {
    return unique_solve(model.D, Vec(model.C * xi + model.E2 * s), diag_fast, tol);
  };
  auto field = [&](const Vec& xi, double r) {
    return Vec(model.A * xi + model.B * solve_z(xi) + model.E1 * r);
  };

  const long steps = static_cast<long>(std::llround(t_end / dt));
  Trajectory traj;
  auto record = [&](double t, const Vec& xi) {
    traj.t.push_back(t);
    traj.xi.push_back(xi);
    traj.z.push_back(solve_z(xi));
    traj.r.push_back(schedule_value(schedule, t));
  };

  Vec xi = xi0;
  record(0.0, xi);
  for (long k = 0; k < steps; ++k) {
    const double t = k * dt;
    // The input is held for the whole step: switches aligned to a step
    // boundary take effect exactly there instead of bleeding into the last
    // stage of the preceding step.
    const double r = schedule_value(schedule, t);
    const Vec k1 = field(xi, r);
    const Vec k2 = field(Vec(xi + 0.5 * dt * k1), r);
    const Vec k3 = field(Vec(xi + 0.5 * dt * k2), r);
    const Vec k4 = field(Vec(xi + dt * k3), r);
    xi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((k + 1) % record_stride == 0 || k + 1 == steps) record((k + 1) * dt, xi);
  }
  return traj;
}

namespace {

double condition_estimate(const Mat& M) {
  const Eigen::JacobiSVD<Mat> svd(M);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smin > 0.0)) return 1e8;
  return std::min(smax / smin, 1e8);
}

void stitch_branches(BifurcationDiagram& diagram, double dir_norm, double cond) {
  struct Active {
    int branch = 0;
    Vec last_x;
  };
  std::vector<Active> active;
  for (std::size_t i = 0; i < diagram.points.size(); ++i) {
    const auto& zs = diagram.points[i].z;
    const auto& xs = diagram.points[i].x;
    std::vector<bool> sol_used(zs.size(), false);
    std::vector<bool> act_used(active.size(), false);
    const double cap =
        i == 0 ? 0.0
               : 10.0 * std::abs(diagram.lambdas[i] - diagram.lambdas[i - 1]) * dir_norm * cond;

    // Greedy nearest-neighbor matching between live branches and solutions.
    struct Pair {
      double d;
      int a, s;
    };
    std::vector<Pair> pairs;
    for (int a = 0; a < static_cast<int>(active.size()); ++a)
      for (int sidx = 0; sidx < static_cast<int>(xs.size()); ++sidx) {
        const double d = (active[a].last_x - xs[sidx]).norm();
        if (d <= cap) pairs.push_back({d, a, sidx});
      }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });

    std::vector<Active> next_active;
    for (const auto& p : pairs) {
      if (act_used[p.a] || sol_used[p.s]) continue;
      act_used[p.a] = true;
      sol_used[p.s] = true;
      diagram.branches[active[p.a].branch].points.emplace_back(static_cast<int>(i), zs[p.s]);
      next_active.push_back({active[p.a].branch, xs[p.s]});
    }
    for (int sidx = 0; sidx < static_cast<int>(zs.size()); ++sidx) {
      if (sol_used[sidx]) continue;
      SweepBranch b;
      b.points.emplace_back(static_cast<int>(i), zs[sidx]);
      diagram.branches.push_back(std::move(b));
      next_active.push_back({static_cast<int>(diagram.branches.size()) - 1, xs[sidx]});
    }
    active = std::move(next_active);
  }
}

}  // namespace

BifurcationDiagram sweep_1d(const Mat& M, const Vec& q0, const Vec& dir,
                            const std::vector<double>& lambdas, const Tolerances& tol) {
  check_square(M, "M");
  if (M.rows() != q0.size() || M.rows() != dir.size())
    throw InputError("sweep_1d: dimension mismatch");
  if (lambdas.empty()) throw InputError("sweep_1d: empty grid");

  BifurcationDiagram diagram;
  diagram.q0 = q0;
  diagram.dir = dir;
  diagram.lambdas = lambdas;
  const double dir_norm = dir.norm();

  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const Vec q = q0 + lambdas[i] * dir;
    const SolutionSet sols = solve_enumerate(LcpInstance(M, q, tol));

    SweepPoint pt;
    pt.lambda = lambdas[i];
    pt.continuum = sols.continuum();
    pt.count = sols.exact_count();
    for (const auto& sol : sols.isolated) {
      pt.z.push_back(sol.z);
      pt.x.push_back(sol.x);
    }

    double local_step = 0.0;
    if (i > 0) local_step = std::max(local_step, std::abs(lambdas[i] - lambdas[i - 1]));
    if (i + 1 < lambdas.size())
      local_step = std::max(local_step, std::abs(lambdas[i + 1] - lambdas[i]));
    const double reach = local_step * dir_norm;
    pt.skeleton_proximal = skeleton_distance(M, q) <= reach;

    for (const auto& sol : sols.isolated) {
      const SingularityFlags flags = singularity_flags(M, sol.x, 1e-9, tol);
      pt.solution_on_boundary = pt.solution_on_boundary || flags.on_orthant_boundary;
      pt.singular_piece = pt.singular_piece || flags.singular_piece.has_value();
    }
    diagram.points.push_back(std::move(pt));
  }
  stitch_branches(diagram, dir_norm, condition_estimate(M));
  return diagram;
}

}  // namespace lcpatlas
