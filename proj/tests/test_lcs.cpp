#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lcpatlas/analysis.hpp"
#include "lcpatlas/cones.hpp"
#include "lcpatlas/equivalence.hpp"
#include "lcpatlas/lcs.hpp"

#include "helpers.hpp"

using namespace lcpatlas;
using testutil::ones_2x2;
using testutil::random_matrix;
using testutil::random_p_matrix;
using testutil::random_vector;
using testutil::regular_pair_2x2;

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return out;
}

LcsModel scalar_model(double a, double b, double c, double d, double e1, double e2) {
  LcsModel model;
  model.A = Mat::Constant(1, 1, a);
  model.B = Mat::Constant(1, 1, b);
  model.C = Mat::Constant(1, 1, c);
  model.D = Mat::Constant(1, 1, d);
  model.E1 = Vec::Constant(1, e1);
  model.E2 = Vec::Constant(1, e2);
  return model;
}

// Decoupled two-state linear model (no feedback through z when s keeps the
// constraint inactive).
LcsModel diagonal_model() {
  LcsModel model;
  model.A = Mat::Zero(2, 2);
  model.A(0, 0) = -1.0;
  model.A(1, 1) = -2.0;
  model.B = Mat::Zero(2, 1);
  model.C = Mat::Zero(1, 2);
  model.D = Mat::Constant(1, 1, 1.0);
  model.E1 = Vec(2);
  model.E1 << 1.0, 2.0;
  model.E2 = Vec::Constant(1, 1.0);
  return model;
}

}  // namespace

TEST_CASE("steady-state data: no feedback reduces to the constraint block") {
  auto g = testutil::rng(301);
  LcsModel model;
  model.A = random_matrix(g, 3) + 4.0 * Mat::Identity(3, 3);
  model.B = Mat::Zero(3, 2);
  model.C = random_matrix(g, 2).leftCols(2).eval();
  model.C.conservativeResize(2, 3);
  model.C.col(2).setZero();
  model.D = random_p_matrix(g, 2);
  model.E1 = random_vector(g, 3);
  model.E2 = random_vector(g, 2);

  const LcpData data = lcp_data(model, 0.7, 1.3, {});
  CHECK((data.M - model.D).norm() == 0.0);
  const Vec expect = model.E2 * 1.3 - model.C * model.A.inverse() * model.E1 * 0.7;
  CHECK((data.q - expect).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("steady-state data: decoupled constraint keeps q = E2 s") {
  auto g = testutil::rng(302);
  LcsModel model;
  model.A = random_matrix(g, 2) + 3.0 * Mat::Identity(2, 2);
  model.B = random_matrix(g, 2);
  model.C = Mat::Zero(2, 2);
  model.D = random_p_matrix(g, 2);
  model.E1 = random_vector(g, 2);
  model.E2 = random_vector(g, 2);
  const LcpData data = lcp_data(model, -2.0, 0.5, {});
  CHECK((data.M - model.D).norm() == 0.0);
  CHECK((data.q - model.E2 * 0.5).norm() == 0.0);
}

TEST_CASE("steady-state data: hand-sized example") {
  LcsModel model = scalar_model(-2.0, 1.0, 3.0, 1.5, 2.0, 0.5);
  // M = d - c b / a = 1.5 + 1.5 = 3, q = e2 s - (c/a) e1 r = 0.5 s + 3 r.
  const LcpData data = lcp_data(model, 1.0, 2.0, {});
  CHECK(data.M(0, 0) == doctest::Approx(3.0));
  CHECK(data.q(0) == doctest::Approx(1.0 + 3.0));
}

TEST_CASE("steady-state data: singular state matrix and bad shapes are rejected") {
  LcsModel model = scalar_model(0.0, 1.0, 1.0, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(lcp_data(model, 0.0, 0.0, {}), SingularMatrixError);
  model = scalar_model(-1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
  model.B = Mat::Zero(2, 1);
  CHECK_THROWS_AS(lcp_data(model, 0.0, 0.0, {}), InputError);
}

TEST_CASE("constraint solve: identity block clips the negative part") {
  Vec v(2);
  v << 1.0, 0.5;
  CHECK((fD_inverse(Mat::Identity(2, 2), v) - Vec::Zero(2)).norm() == 0.0);
  v << -1.0, 2.0;
  Vec expect(2);
  expect << 1.0, 0.0;
  CHECK((fD_inverse(Mat::Identity(2, 2), v) - expect).norm() == 0.0);
}

TEST_CASE("constraint solve: positive diagonal scales the clip") {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 0.5;
  Vec v(2);
  v << -3.0, -1.0;
  Vec expect(2);
  expect << 1.5, 2.0;
  CHECK((fD_inverse(D, v) - expect).norm() == 0.0);
}

TEST_CASE("constraint solve: inverts the piecewise map for positive-minor blocks") {
  auto g = testutil::rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(g() % 4);
    const Mat D = random_p_matrix(g, m);
    const Vec x = random_vector(g, m);
    const Vec v = pwl_map(D, x);
    const Vec z = fD_inverse(D, v);
    CHECK((z - z_from_x(x)).lpNorm<Eigen::Infinity>() <= 1e-8 * (1.0 + x.lpNorm<Eigen::Infinity>()));
    CHECK(lcp_residual(D, v, z) <= 1e-9 * (1.0 + v.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("constraint solve: blocks without positive minors are rejected") {
  CHECK_THROWS_AS(fD_inverse(-Mat::Identity(2, 2), Vec::Zero(2)), NotPMatrixError);
  Mat D(2, 2);
  D << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(fD_inverse(D, Vec::Zero(2)), NotPMatrixError);
  CHECK_THROWS_AS(fD_inverse(Mat::Identity(2, 2), Vec::Zero(3)), InputError);
}

TEST_CASE("vector field: no feedback gives the plain linear field") {
  auto g = testutil::rng(304);
  LcsModel model = diagonal_model();
  for (int trial = 0; trial < 20; ++trial) {
    const Vec xi = random_vector(g, 2);
    const double r = testutil::uniform(g, -2.0, 2.0);
    const Vec f = vector_field(model, xi, r, /*s=*/1.0);
    CHECK((f - (model.A * xi + model.E1 * r)).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("vector field: inactive constraint takes the z = 0 branch") {
  LcsModel model = scalar_model(-1.0, 2.0, 1.0, 1.0, 1.0, 1.0);
  // C xi + E2 s = xi + 2 > 0 at xi = 1, so z = 0.
  Vec xi(1);
  xi << 1.0;
  const Vec f = vector_field(model, xi, 0.5, 2.0);
  CHECK(f(0) == doctest::Approx(-1.0 + 0.5));
  // At xi = -5 the constraint activates: z = 3, field = 5 + 6 + 0.5.
  xi << -5.0;
  CHECK(vector_field(model, xi, 0.5, 2.0)(0) == doctest::Approx(-(-5.0) + 2.0 * 3.0 + 0.5));
}

TEST_CASE("vector field: dimension and constraint-block errors") {
  LcsModel model = scalar_model(-1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(vector_field(model, Vec::Zero(2), 0.0, 0.0), InputError);
  model.D(0, 0) = -1.0;
  CHECK_THROWS_AS(vector_field(model, Vec::Zero(1), 0.0, 0.0), NotPMatrixError);
}

TEST_CASE("equilibria: no feedback pins the state at the linear rest point") {
  auto g = testutil::rng(305);
  LcsModel model = diagonal_model();
  const double r = 1.7;
  const EquilibriumSet set = equilibria(model, r, 1.0);
  REQUIRE(set.points.size() == 1);
  CHECK(!set.continuum());
  const Vec expect = -model.A.inverse() * model.E1 * r;
  CHECK((set.points[0].xi - expect).lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK(set.points[0].z.norm() == 0.0);
}

TEST_CASE("equilibria: scalar models match the sign analysis of (M, q)") {
  auto g = testutil::rng(306);
  int checked = 0;
  int multi = 0;
  for (int trial = 0; trial < 300 && checked < 100; ++trial) {
    const double a = (g() % 2 ? 1.0 : -1.0) * testutil::uniform(g, 0.5, 2.0);
    const double b = testutil::uniform(g, -2.0, 2.0);
    const double c = testutil::uniform(g, -2.0, 2.0);
    const double d = testutil::uniform(g, 0.2, 2.0);
    const double e1 = testutil::uniform(g, -1.5, 1.5);
    const double e2 = testutil::uniform(g, -1.5, 1.5);
    const double r = testutil::uniform(g, -2.0, 2.0);
    const double s = testutil::uniform(g, -2.0, 2.0);
    const LcsModel model = scalar_model(a, b, c, d, e1, e2);

    const double M = d - c * b / a;
    const double q = e2 * s - (c / a) * e1 * r;
    if (std::abs(M) < 1e-3 || std::abs(q) < 1e-3) continue;
    ++checked;

    int expect = 0;
    if (M > 0) expect = 1;
    else expect = q > 0 ? 2 : 0;

    const EquilibriumSet set = equilibria(model, r, s);
    CHECK(!set.continuum());
    CHECK(static_cast<int>(set.points.size()) == expect);
    if (expect == 2) ++multi;
    for (const auto& eq : set.points) {
      // Both directions of the correspondence: the state is a rest point and
      // the multiplier is reproduced by the constraint solve at that state.
      CHECK(vector_field(model, eq.xi, r, s).lpNorm<Eigen::Infinity>() <= 1e-9);
      const Vec back = fD_inverse(model.D, Vec(model.C * eq.xi + model.E2 * s));
      CHECK((back - eq.z).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
  }
  CHECK(checked >= 100);
  CHECK(multi >= 5);
}

TEST_CASE("equilibria: planar models produce rest points with consistent multipliers") {
  auto g = testutil::rng(307);
  int points_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LcsModel model;
    model.A = random_matrix(g, 2) + 3.5 * Mat::Identity(2, 2);
    model.B = random_matrix(g, 2);
    model.C = random_matrix(g, 2);
    model.D = random_p_matrix(g, 2);
    model.E1 = random_vector(g, 2);
    model.E2 = random_vector(g, 2);
    const double r = testutil::uniform(g, -1.5, 1.5);
    const double s = testutil::uniform(g, -1.5, 1.5);

    const LcpData data = lcp_data(model, r, s, {});
    const EquilibriumSet set = equilibria(model, r, s);
    if (set.continuum()) continue;
    for (const auto& eq : set.points) {
      ++points_seen;
      CHECK(lcp_residual(data.M, data.q, eq.z) <= 1e-8 * (1.0 + data.q.lpNorm<Eigen::Infinity>()));
      CHECK(vector_field(model, eq.xi, r, s).lpNorm<Eigen::Infinity>() <=
            1e-8 * (1.0 + eq.xi.lpNorm<Eigen::Infinity>()));
      CHECK((eq.x - (eq.w - eq.z)).norm() == 0.0);
    }
  }
  CHECK(points_seen >= 40);
}

TEST_CASE("input schedule: last step at or before t wins") {
  const std::vector<ScheduleStep> sched = {{0.0, 1.0}, {0.5, 2.0}, {1.5, -3.0}};
  CHECK(schedule_value(sched, -1.0) == 1.0);  // before the first step: its value
  CHECK(schedule_value(sched, 0.0) == 1.0);
  CHECK(schedule_value(sched, 0.3) == 1.0);
  CHECK(schedule_value(sched, 0.5) == 2.0);
  CHECK(schedule_value(sched, 1.49) == 2.0);
  CHECK(schedule_value(sched, 7.0) == -3.0);
  CHECK_THROWS_AS(schedule_value({}, 0.0), InputError);
}

TEST_CASE("simulation: linear contraction reaches the rest point") {
  const LcsModel model = diagonal_model();
  Vec xi0(2);
  xi0 << 3.0, -2.0;
  const Trajectory traj = simulate(model, xi0, {{0.0, 1.0}}, 1.0, 12.0, 1e-3, 100);
  const Vec target = -model.A.inverse() * model.E1;
  CHECK((traj.xi.back() - target).lpNorm<Eigen::Infinity>() <= 1e-4);
  CHECK(traj.t.front() == 0.0);
  CHECK(traj.t.back() == doctest::Approx(12.0));
}

TEST_CASE("simulation: fourth-order error decay on a smooth segment") {
  const LcsModel model = diagonal_model();
  Vec xi0(2);
  xi0 << 3.0, -2.0;
  const double t_end = 1.0;
  const Vec target = -model.A.inverse() * model.E1;
  Vec exact(2);
  exact << target(0) + (xi0(0) - target(0)) * std::exp(-t_end),
      target(1) + (xi0(1) - target(1)) * std::exp(-2.0 * t_end);

  auto final_error = [&](double dt) {
    const Trajectory traj = simulate(model, xi0, {{0.0, 1.0}}, 1.0, t_end, dt, 1000000);
    return (traj.xi.back() - exact).lpNorm<Eigen::Infinity>();
  };
  const double e1 = final_error(0.05);
  const double e2 = final_error(0.025);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("simulation: trajectory crosses the kink and settles on the active branch") {
  // xi' = -xi + z - 2 with z = max(0, -xi): rest point xi = -1 on the active
  // side, approached from the inactive side.
  const LcsModel model = scalar_model(-1.0, 1.0, 1.0, 1.0, 1.0, 0.0);
  Vec xi0(1);
  xi0 << 2.0;
  const Trajectory traj = simulate(model, xi0, {{0.0, -2.0}}, 0.0, 15.0, 1e-3, 50);
  CHECK(traj.xi.back()(0) == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(traj.z.back()(0) == doctest::Approx(1.0).epsilon(1e-3));
  for (const auto& xi : traj.xi) CHECK(std::abs(xi(0)) <= 3.0);  // stays bounded
}

TEST_CASE("simulation: schedule switches take effect on step boundaries") {
  LcsModel model = scalar_model(-1.0, 0.0, 0.0, 1.0, 1.0, 1.0);
  Vec xi0 = Vec::Zero(1);
  const Trajectory traj = simulate(model, xi0, {{0.0, 0.0}, {1.0, 5.0}}, 0.0, 2.0, 1e-3, 10);
  const double expect = 5.0 * (1.0 - std::exp(-1.0));
  CHECK(traj.xi.back()(0) == doctest::Approx(expect).epsilon(1e-7));
  // Recorded inputs reflect the schedule.
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    CHECK(traj.r[i] == (traj.t[i] >= 1.0 ? 5.0 : 0.0));
  }
}

TEST_CASE("simulation: records honor the stride and the endpoints") {
  const LcsModel model = scalar_model(-1.0, 0.0, 0.0, 1.0, 1.0, 1.0);
  const Trajectory traj = simulate(model, Vec::Zero(1), {{0.0, 1.0}}, 0.0, 0.1, 1e-3, 10);
  REQUIRE(traj.t.size() == 11);
  for (std::size_t i = 0; i < traj.t.size(); ++i)
    CHECK(traj.t[i] == doctest::Approx(0.01 * static_cast<double>(i)));
  CHECK(traj.xi.size() == traj.t.size());
  CHECK(traj.z.size() == traj.t.size());
  CHECK(traj.r.size() == traj.t.size());
}

TEST_CASE("simulation: invalid arguments are rejected") {
  const LcsModel model = scalar_model(-1.0, 0.0, 0.0, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(simulate(model, Vec::Zero(1), {{0.0, 1.0}}, 0.0, 1.0, -0.1), InputError);
  CHECK_THROWS_AS(simulate(model, Vec::Zero(1), {}, 0.0, 1.0), InputError);
  CHECK_THROWS_AS(simulate(model, Vec::Zero(1), {{0.0, 1.0}, {0.0, 2.0}}, 0.0, 1.0), InputError);
  CHECK_THROWS_AS(simulate(model, Vec::Zero(1), {{0.0, 1.0}}, 0.0, 1.0, 1e-3, 0), InputError);
  CHECK_THROWS_AS(simulate(model, Vec::Zero(2), {{0.0, 1.0}}, 0.0, 1.0), InputError);
  LcsModel bad = model;
  bad.D(0, 0) = -1.0;
  CHECK_THROWS_AS(simulate(bad, Vec::Zero(1), {{0.0, 1.0}}, 0.0, 1.0), NotPMatrixError);
}

TEST_CASE("offset sweep: unique-solution matrix gives one full-length branch") {
  Vec q0(2), dir(2);
  q0 << -1.0, -1.0;
  dir << 1.0, 1.0;
  const BifurcationDiagram diagram =
      sweep_1d(Mat::Identity(2, 2), q0, dir, linspace(0.0, 2.0, 21));
  REQUIRE(diagram.points.size() == 21);
  for (const auto& pt : diagram.points) {
    REQUIRE(pt.count.has_value());
    CHECK(*pt.count == 1);
    CHECK(!pt.continuum);
  }
  // Crossing the apex at lambda = 1 puts the solution on the orthant boundary.
  CHECK(diagram.points[10].solution_on_boundary);
  CHECK(!diagram.points[0].solution_on_boundary);
  REQUIRE(diagram.branches.size() == 1);
  CHECK(diagram.branches[0].points.size() == 21);
}

TEST_CASE("offset sweep: collapsing matrix shows a one--continuum--one profile") {
  Vec q0(2), dir(2);
  q0 << -1.0, -1.0;
  dir << 1.0, -1.0;
  const BifurcationDiagram diagram = sweep_1d(ones_2x2(), q0, dir, linspace(-1.0, 1.0, 21));
  REQUIRE(diagram.points.size() == 21);
  for (int i = 0; i < 21; ++i) {
    const auto& pt = diagram.points[i];
    if (i == 10) {
      CHECK(pt.continuum);
      CHECK(!pt.count.has_value());
      CHECK(pt.skeleton_proximal);
    } else {
      REQUIRE(pt.count.has_value());
      CHECK(*pt.count == 1);
    }
  }
  // The continuum interrupts branch stitching: one branch per side.
  CHECK(diagram.branches.size() == 2);
  long total = 0;
  for (const auto& b : diagram.branches) total += static_cast<long>(b.points.size());
  CHECK(total == 20);
}

TEST_CASE("offset sweep: pivot-equivalent problems share the count profile") {
  const IndexSet beta({1}, 2);
  Vec q0(2), dir(2);
  q0 << -1.0, -1.0;
  dir << 1.0, -1.0;
  const auto grid = linspace(-1.0, 1.0, 21);
  const BifurcationDiagram left = sweep_1d(ones_2x2(), q0, dir, grid);
  // The offset map of the pivot is linear, so the image sweep line is the
  // image of the endpoints.
  const Vec q0p = pivot_q_forward(ones_2x2(), beta, q0);
  const Vec dirp = pivot_q_forward(ones_2x2(), beta, dir);
  const BifurcationDiagram right = sweep_1d(regular_pair_2x2(), q0p, dirp, grid);
  REQUIRE(left.points.size() == right.points.size());
  for (std::size_t i = 0; i < left.points.size(); ++i) {
    CHECK(left.points[i].continuum == right.points[i].continuum);
    CHECK(left.points[i].count == right.points[i].count);
  }
}

TEST_CASE("offset sweep: count changes only next to flagged grid points") {
  auto g = testutil::rng(308);
  int transitions = 0;
  for (int sweep = 0; sweep < 50; ++sweep) {
    const int n = 2 + static_cast<int>(g() % 2);
    const Mat M = random_matrix(g, n);
    const Vec q0 = random_vector(g, n);
    const Vec dir = random_vector(g, n);
    if (dir.norm() < 1e-2) continue;
    const BifurcationDiagram diagram = sweep_1d(M, q0, dir, linspace(-1.0, 1.0, 41));
    for (std::size_t i = 0; i + 1 < diagram.points.size(); ++i) {
      const auto& a = diagram.points[i];
      const auto& b = diagram.points[i + 1];
      if (!a.count.has_value() || !b.count.has_value()) {
        // A continuum lies inside the critical set itself.
        const auto& c = a.count.has_value() ? b : a;
        CHECK(c.skeleton_proximal);
        continue;
      }
      if (*a.count != *b.count) {
        ++transitions;
        CHECK((a.skeleton_proximal || b.skeleton_proximal));
      }
    }
  }
  CHECK(transitions >= 30);
}

TEST_CASE("offset sweep: branch rows are contiguous and cover every solution") {
  auto g = testutil::rng(309);
  for (int sweep = 0; sweep < 20; ++sweep) {
    const Mat M = random_matrix(g, 2);
    const Vec q0 = random_vector(g, 2);
    Vec dir = random_vector(g, 2);
    if (dir.norm() < 1e-2) dir << 1.0, 0.0;
    const BifurcationDiagram diagram = sweep_1d(M, q0, dir, linspace(-1.0, 1.0, 31));
    long isolated = 0;
    for (const auto& pt : diagram.points) isolated += static_cast<long>(pt.z.size());
    long stitched = 0;
    for (const auto& b : diagram.branches) {
      REQUIRE(!b.points.empty());
      stitched += static_cast<long>(b.points.size());
      for (std::size_t k = 0; k + 1 < b.points.size(); ++k)
        CHECK(b.points[k + 1].first == b.points[k].first + 1);
    }
    CHECK(stitched == isolated);
  }
}

TEST_CASE("offset sweep: malformed input is rejected") {
  CHECK_THROWS_AS(sweep_1d(Mat::Identity(2, 2), Vec::Zero(2), Vec::Zero(3), {0.0}), InputError);
  CHECK_THROWS_AS(sweep_1d(Mat::Identity(2, 2), Vec::Zero(2), Vec::Zero(2), {}), InputError);
}
