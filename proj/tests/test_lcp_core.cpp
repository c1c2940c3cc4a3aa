#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcpatlas/cones.hpp"
#include "lcpatlas/lcp_core.hpp"

#include "helpers.hpp"

using namespace lcpatlas;
using testutil::ones_2x2;
using testutil::random_matrix;
using testutil::random_p_matrix;
using testutil::random_vector;
using testutil::regular_pair_2x2;

TEST_CASE("complementary matrix: empty support gives the identity") {
  auto g = testutil::rng(1);
  const Mat M = random_matrix(g, 4);
  CHECK((complementary_matrix(M, IndexSet::empty_set(4)) - Mat::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("complementary matrix: full support gives -M") {
  auto g = testutil::rng(2);
  const Mat M = random_matrix(g, 3);
  CHECK((complementary_matrix(M, IndexSet::full(3)) + M).norm() == 0.0);
}

TEST_CASE("complementary matrix: mixed support substitutes single columns") {
  const Mat M = ones_2x2();
  Mat expect(2, 2);
  expect << -1, 0, -1, 1;
  CHECK((complementary_matrix(M, IndexSet({1}, 2)) - expect).norm() == 0.0);
}

TEST_CASE("piecewise map: identity on the nonnegative orthant") {
  auto g = testutil::rng(3);
  const Mat M = random_matrix(g, 3);
  Vec x(3);
  x << 0.5, 0.0, 2.0;
  CHECK((pwl_map(M, x) - x).norm() == 0.0);
}

TEST_CASE("piecewise map: linear M-action on the nonpositive orthant") {
  auto g = testutil::rng(4);
  const Mat M = random_matrix(g, 3);
  Vec x(3);
  x << -0.5, 0.0, -2.0;
  CHECK((pwl_map(M, x) - M * x).norm() <= 1e-14);
}

TEST_CASE("piecewise map: hand value in a mixed orthant") {
  Vec x(2);
  x << -1, 2;
  Vec expect(2);
  expect << -1, 1;
  CHECK((pwl_map(ones_2x2(), x) - expect).norm() == 0.0);
}

TEST_CASE("piecewise map agrees with every orthant-consistent linear piece") {
  auto g = testutil::rng(5);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(g() % 6);
    const Mat M = random_matrix(g, n);
    const Vec x = random_vector(g, n);
    const Vec f = pwl_map(M, x);
    const double scale = 1.0 + f.norm();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const IndexSet alpha = IndexSet::from_mask(mask, n);
      bool contains = true;
      for (int i = 1; i <= n; ++i) {
        const double xi = x(i - 1);
        if (alpha.contains(i) ? xi > 0 : xi < 0) {
          contains = false;
          break;
        }
      }
      if (!contains) continue;
      // Piece matrix: column j is M_j on the support, e_j elsewhere.
      const Mat piece = complementary_matrix(-M, alpha);
      REQUIRE((piece * x - f).norm() <= 1e-10 * scale);
      ++checked;
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("x/z conversions: zero solution maps to q") {
  auto g = testutil::rng(6);
  const Mat M = random_matrix(g, 3);
  const Vec q = random_vector(g, 3);
  CHECK((x_from_z(M, q, Vec::Zero(3)) - q).norm() == 0.0);
}

TEST_CASE("x/z conversions: z is the positive part of -x") {
  Vec x(2);
  x << -1, 2;
  Vec expect(2);
  expect << 1, 0;
  CHECK((z_from_x(x) - expect).norm() == 0.0);
}

TEST_CASE("x/z conversions: identity problem hand value") {
  Vec q(2), z(2);
  q << -1, -2;
  z << 1, 2;
  CHECK((x_from_z(Mat::Identity(2, 2), q, z) - q).norm() == 0.0);
}

TEST_CASE("enumeration: nonnegative offset with the identity has only z = 0") {
  Vec q(3);
  q << 0.5, 0.0, 2.0;
  const SolutionSet set = solve_enumerate(LcpInstance(Mat::Identity(3, 3), q));
  REQUIRE(set.exact_count().has_value());
  CHECK(*set.exact_count() == 1);
  CHECK(set.isolated[0].z.norm() <= 1e-12);
}

TEST_CASE("enumeration: rank-one matrix, offset left of the degenerate ray") {
  Vec q(2);
  q << -3, 1;
  const SolutionSet set = solve_enumerate(LcpInstance(ones_2x2(), q));
  REQUIRE(set.exact_count().has_value());
  REQUIRE(*set.exact_count() == 1);
  Vec expect(2);
  expect << 3, 0;
  CHECK((set.isolated[0].z - expect).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("enumeration: offset on the degenerate ray yields a solution segment") {
  Vec q(2);
  q << -1, -1;
  const SolutionSet set = solve_enumerate(LcpInstance(ones_2x2(), q));
  CHECK(set.continuum());
  CHECK_FALSE(set.exact_count().has_value());
  REQUIRE(set.degenerate.size() == 1);
  const DegenerateFamily& fam = set.degenerate[0];
  CHECK(fam.alpha == IndexSet({1, 2}, 2));
  REQUIRE(fam.nullspace_generators.size() == 1);

  // The family covers z(t) = (1+t, -t) for t in [-1, 0]: both endpoints lie
  // on the affine line through the particular point along the generator.
  for (double t : {-1.0, -0.5, 0.0}) {
    Vec z(2);
    z << 1.0 + t, -t;
    const Vec x = x_from_z(ones_2x2(), q, z);
    Vec r = x - fam.particular_x;
    r -= fam.nullspace_generators[0] * fam.nullspace_generators[0].dot(r);
    CHECK(r.norm() <= 1e-10);
    CHECK(lcp_residual(ones_2x2(), q, z) <= 1e-12);
  }

  // Endpoints of the segment are not double-reported as isolated points.
  CHECK(set.isolated.empty());
}

TEST_CASE("enumeration: isolated records satisfy the solution identities") {
  auto g = testutil::rng(7);
  int solutions_seen = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 1 + static_cast<int>(g() % 6);
    const Mat M = random_matrix(g, n);
    const Vec q = random_vector(g, n);
    const LcpInstance inst(M, q);
    const SolutionSet set = solve_enumerate(inst);
    const double tol = 1e-7 * (1.0 + q.norm());
    for (const auto& s : set.isolated) {
      ++solutions_seen;
      CHECK(s.z.minCoeff() >= -tol);
      CHECK(s.w.minCoeff() >= -tol);
      CHECK(std::abs(s.z.dot(s.w)) <= tol * (1.0 + s.z.norm() + s.w.norm()));
      CHECK((s.w - (M * s.z + q)).lpNorm<Eigen::Infinity>() <= tol);
      CHECK((s.x - x_from_z(M, q, s.z)).lpNorm<Eigen::Infinity>() <= tol);
      CHECK((z_from_x(s.x) - s.z).lpNorm<Eigen::Infinity>() <= tol);
    }
  }
  CHECK(solutions_seen > 300);
}

TEST_CASE("enumeration: solution count is constant inside each planar cell") {
  auto g = testutil::rng(8);
  int cells_checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Mat M = random_matrix(g, 2);
    if (in_skeleton(M, Vec::Ones(2), 1e-3)) continue;  // skip near-degenerate draws
    std::vector<Sector2D> cells;
    try {
      cells = cells_2d(M);
    } catch (const NumericError&) {
      continue;
    }
    for (const auto& cell : cells) {
      int count0 = -1;
      const double width = cell.end - cell.start;
      for (int k = 1; k <= 5; ++k) {
        const double angle = cell.start + width * k / 6.0;
        Vec q(2);
        q << std::cos(angle), std::sin(angle);
        if (in_skeleton(M, q, 1e-7)) continue;
        const SolutionSet set = solve_enumerate(LcpInstance(M, q));
        if (!set.exact_count()) continue;
        if (count0 < 0)
          count0 = *set.exact_count();
        else
          CHECK(count0 == *set.exact_count());
      }
      ++cells_checked;
    }
  }
  CHECK(cells_checked >= 30);
}

TEST_CASE("pivoting solver: identity problem solved in closed form") {
  Vec q(2);
  q << -1, -2;
  const LemkeResult res = solve_lemke(LcpInstance(Mat::Identity(2, 2), q));
  REQUIRE(res.status == LemkeStatus::Solved);
  Vec expect(2);
  expect << 1, 2;
  CHECK((res.z - expect).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("pivoting solver: strictly copositive matrices always terminate") {
  auto g = testutil::rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    Mat M(2, 2);
    // Positive entries make x'Mx > 0 on the nonnegative orthant minus 0.
    M << testutil::uniform(g, 0.1, 2.0), testutil::uniform(g, 0.1, 2.0),
        testutil::uniform(g, 0.1, 2.0), testutil::uniform(g, 0.1, 2.0);
    const Vec q = random_vector(g, 2, 3.0);
    const LemkeResult res = solve_lemke(LcpInstance(M, q));
    REQUIRE(res.status == LemkeStatus::Solved);
    CHECK(lcp_residual(M, q, res.z) <= 1e-8 * (1.0 + q.norm()));
  }
}

TEST_CASE("pivoting solver: agrees with enumeration on P-matrices") {
  auto g = testutil::rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(g() % 6);
    const Mat M = random_p_matrix(g, n);
    const Vec q = random_vector(g, n, 3.0);
    const SolutionSet set = solve_enumerate(LcpInstance(M, q));
    REQUIRE(set.exact_count().has_value());
    REQUIRE(*set.exact_count() == 1);
    const LemkeResult res = solve_lemke(LcpInstance(M, q));
    REQUIRE(res.status == LemkeStatus::Solved);
    CHECK((res.z - set.isolated[0].z).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("pivoting solver: infeasible problem ends on a ray") {
  Mat M(1, 1);
  M << -1;
  Vec q(1);
  q << -1;
  const LemkeResult res = solve_lemke(LcpInstance(M, q));
  CHECK(res.status == LemkeStatus::RayTermination);
}

TEST_CASE("residual: zero exactly at solutions, positive off them") {
  Vec q(2);
  q << -1, 3;
  Vec z(2);
  z << 1, 0;
  CHECK(lcp_residual(Mat::Identity(2, 2), q, z) == 0.0);
  Vec bad(2);
  bad << 2, 0;
  CHECK(lcp_residual(Mat::Identity(2, 2), q, bad) > 0.5);
}

TEST_CASE("boundary solutions are reported once") {
  Vec q(2);
  q << 0, -1;
  const SolutionSet set = solve_enumerate(LcpInstance(Mat::Identity(2, 2), q));
  REQUIRE(set.exact_count().has_value());
  CHECK(*set.exact_count() == 1);
  Vec expect(2);
  expect << 0, 1;
  CHECK((set.isolated[0].z - expect).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("enumeration dimension cap") {
  const int n = 17;
  CHECK_THROWS_AS(solve_enumerate(LcpInstance(Mat::Identity(n, n), Vec::Ones(n))),
                  UnsupportedDimension);
}
