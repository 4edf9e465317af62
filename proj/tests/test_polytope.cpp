#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "helpers.hpp"
#include "sublap/polytope.hpp"

using namespace sublap;
using testutil::restrict_to_support;

TEST_CASE("extreme points are members, interior mixtures are members") {
  Rng rng(21);
  const auto oracle = testutil::random_table(4, {0, 1, 3}, rng);
  const PolytopeHandle handle(oracle);
  const auto vertices = enumerate_extreme_points(oracle);
  Eigen::VectorXd mix = Eigen::VectorXd::Zero(handle.dim());
  for (const auto& vertex : vertices) {
    const Eigen::VectorXd local = restrict_to_support(oracle, vertex.w);
    CHECK(membership(handle, local).member);
    mix += local;
  }
  mix /= static_cast<double>(vertices.size());
  CHECK(membership(handle, mix).member);
}

TEST_CASE("points violating a subset constraint are rejected") {
  const auto edge = build_table_function(2, {0, 1}, {0.0, 1.0, 1.0, 0.0});
  const PolytopeHandle handle(edge);
  Eigen::VectorXd outside(2);
  outside << 2.0, -2.0;  // sums to F(support) but w({0}) = 2 > 1
  const auto report = membership(handle, outside);
  CHECK_FALSE(report.member);
  CHECK(report.worst_violation > 0.5);
}

TEST_CASE("the sum equality is enforced") {
  const auto edge = build_table_function(2, {0, 1}, {0.0, 1.0, 1.0, 0.0});
  const PolytopeHandle handle(edge);
  Eigen::VectorXd low(2);
  low << -0.5, -0.5;  // every subset constraint holds but the total is short
  CHECK_FALSE(membership(handle, low).member);
}

TEST_CASE("l1 ball intersection restricts membership") {
  const auto edge = build_table_function(2, {0, 1}, {0.0, 1.0, 1.0, 0.0});
  Eigen::VectorXd vertex(2);
  vertex << 1.0, -1.0;
  const PolytopeHandle tight(edge, Eigen::VectorXd::Zero(2), 0.5, Eigen::VectorXd::Zero(2));
  const auto report = membership(tight, vertex);
  CHECK_FALSE(report.member);
  CHECK(report.l1_violated);
  const PolytopeHandle loose(edge, Eigen::VectorXd::Zero(2), 3.0, Eigen::VectorXd::Zero(2));
  CHECK(membership(loose, vertex).member);
}

TEST_CASE("linear optimization matches the greedy vertex on plain handles") {
  Rng rng(23);
  const auto oracle = testutil::random_table(5, {0, 2, 4}, rng);
  const PolytopeHandle handle(oracle);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd c = rng.normal_vector(3);
    Eigen::VectorXd dense = Eigen::VectorXd::Zero(5);
    for (int i = 0; i < 3; ++i) dense(oracle.support()[i]) = c(i);
    const auto result = linear_optimize(handle, c);
    CHECK(result.value == doctest::Approx(lovasz_eval(oracle, dense)).epsilon(1e-9));
    CHECK(membership(handle, result.w).member);
  }
}

TEST_CASE("lp optimization with a generous ball reproduces the greedy value") {
  Rng rng(27);
  const auto oracle = testutil::random_symmetric_table(3, {0, 1, 2}, rng);
  const double big = 10.0 * oracle.infinity_norm() + 10.0;
  const PolytopeHandle ball(oracle, Eigen::VectorXd::Zero(3), big, Eigen::VectorXd::Zero(3));
  const PolytopeHandle plain(oracle);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd c = rng.normal_vector(3);
    CHECK(linear_optimize(ball, c).value ==
          doctest::Approx(linear_optimize(plain, c).value).epsilon(1e-7));
  }
}

TEST_CASE("minimum norm of a symmetric base polytope is zero") {
  Rng rng(29);
  const auto oracle = testutil::random_symmetric_table(4, {0, 1, 2, 3}, rng);
  const auto result = wolfe_min_norm(PolytopeHandle(oracle), 1e-5);
  CHECK(result.converged);
  CHECK(result.squared_norm <= 2e-10 + 2e-10);
  CHECK(result.squared_norm >= 0.0);
}

TEST_CASE("minimum norm of a modular singleton polytope is the point itself") {
  // F(S) = sum of c over S makes B(F) = {c}.
  const std::vector<double> c = {0.7, -0.3, 1.1};
  std::vector<double> values(8, 0.0);
  for (Subset s = 0; s < 8; ++s)
    for (int i = 0; i < 3; ++i)
      if (s >> i & 1) values[s] += c[i];
  const auto oracle = build_table_function(3, {0, 1, 2}, values);
  const auto result = wolfe_min_norm(PolytopeHandle(oracle), 1e-6);
  const double expected = 0.7 * 0.7 + 0.3 * 0.3 + 1.1 * 1.1;
  CHECK(result.squared_norm == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("wolfe agrees with an independent simplex qp solver") {
  Rng rng(31);
  const double eps = 0.05;
  for (int trial = 0; trial < 10; ++trial) {
    const int s = rng.uniform_int(2, 4);
    const auto oracle = testutil::random_table(s, testutil::random_support(s, s, rng), rng);
    const auto wolfe = wolfe_min_norm(PolytopeHandle(oracle), eps);
    std::vector<Eigen::VectorXd> vertices;
    for (const auto& vertex : enumerate_extreme_points(oracle))
      vertices.push_back(restrict_to_support(oracle, vertex.w));
    const double qp = testutil::simplex_qp_min_norm2(vertices);
    CHECK(std::abs(wolfe.squared_norm - qp) <= 2 * eps * eps + 1e-6);
    CHECK(wolfe.squared_norm >= qp - 1e-6);
  }
}

TEST_CASE("maurey lattice cover of the l1 ball") {
  for (int n = 1; n <= 5; ++n) {
    const auto cover = l1_ball_cover(n, 1.0);
    CHECK(cover.size() == static_cast<std::size_t>(1 + 2 * n));
  }
  Rng rng(33);
  const double eps = 0.6;
  const auto cover = l1_ball_cover(3, eps);
  for (int trial = 0; trial < 200; ++trial) {
    // Random point of the l1 ball via an exponential-simplex draw.
    Eigen::VectorXd p(3);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      p(i) = -std::log(1.0 - rng.uniform());
      total += p(i);
    }
    const double radius = rng.uniform();
    for (int i = 0; i < 3; ++i) {
      p(i) *= radius / total;
      if (rng.uniform() < 0.5) p(i) = -p(i);
    }
    double best = 1e9;
    for (const auto& q : cover.points) best = std::min(best, (p - q).norm());
    CHECK(best <= eps + 1e-9);
  }
}

TEST_CASE("multiscale cover reaches every extreme point") {
  Rng rng(37);
  const auto oracle = testutil::random_table(3, {0, 1, 2}, rng);
  const auto cover = cover_base_polytope(oracle, 0.8);
  CHECK(cover.skipped == 0);
  for (const auto& vertex : enumerate_extreme_points(oracle)) {
    const Eigen::VectorXd local = restrict_to_support(oracle, vertex.w);
    double best = 1e9;
    for (const auto& q : cover.points) best = std::min(best, (local - q).norm());
    CHECK(best <= cover.radius + 1e-9);
  }
}

TEST_CASE("hausdorff norm of an edge cut is sqrt(2)") {
  const auto edge = build_table_function(2, {0, 1}, {0.0, 1.0, 1.0, 0.0});
  const auto norm = hausdorff_norm(edge);
  CHECK_FALSE(norm.is_bound);
  CHECK(norm.value == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("hausdorff norm falls back to the l1 bound on large supports") {
  const SubmodularOracle wide(
      10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
      [](Subset s) { return popcount(s) > 0 ? 1.0 : 0.0; }, "coverage");
  const auto norm = hausdorff_norm(wide);
  CHECK(norm.is_bound);
  CHECK(norm.value == doctest::Approx(2.0));
}
