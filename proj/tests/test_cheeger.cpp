#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "helpers.hpp"
#include "sublap/cheeger.hpp"
#include "sublap/lovasz.hpp"

using namespace sublap;

namespace {

SubmodularTransformation cycle4() {
  return build_undirected_cut(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

SubmodularTransformation complete4() {
  return build_undirected_cut(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("conductance of fixed sets") {
  const auto c4 = cycle4();
  const auto adjacent = conductance_of_set(c4, 0b0011);
  CHECK(adjacent.cut_s == doctest::Approx(2.0));
  CHECK(adjacent.vol_s == 4);
  CHECK(adjacent.phi == doctest::Approx(0.5));
  const auto opposite = conductance_of_set(c4, 0b0101);
  CHECK(opposite.phi == doctest::Approx(1.0));
  CHECK_THROWS_AS(conductance_of_set(c4, 0), InputError);
  CHECK_THROWS_AS(conductance_of_set(c4, 0b1111), InputError);
}

TEST_CASE("brute force conductance on known graphs") {
  CHECK(brute_force_phi(cycle4()).first == doctest::Approx(0.5));
  CHECK(brute_force_phi(complete4()).first == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("positive sweep satisfies its guarantee") {
  Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = testutil::random_certify_instance(trial, rng.uniform_int(3, 6), rng);
    Eigen::VectorXd x(t.n());
    for (int v = 0; v < t.n(); ++v) x(v) = rng.uniform();
    const Subset s = sweep_positive(t, x);  // throws logic_error on violation
    double lovasz_sum = 0.0;
    for (const auto& f : t.functions()) lovasz_sum += lovasz_eval(f, x);
    double weighted = 0.0;
    for (int v = 0; v < t.n(); ++v) weighted += t.degree(v) * x(v);
    CHECK(t.cut(s) / static_cast<double>(t.volume(s)) <= lovasz_sum / weighted + 1e-9);
  }
}

TEST_CASE("negative sweep mirrors the positive one") {
  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = testutil::random_certify_instance(trial, rng.uniform_int(3, 6), rng);
    Eigen::VectorXd x(t.n());
    for (int v = 0; v < t.n(); ++v) x(v) = -rng.uniform();
    CHECK_NOTHROW(sweep_negative(t, x));
  }
}

TEST_CASE("strong sweep never violates the cheeger bound") {
  Rng rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = testutil::random_certify_instance(trial, rng.uniform_int(3, 7), rng);
    const LaplacianOperator op(t, LaplacianMode::normalized);
    const Eigen::VectorXd x = testutil::random_orthogonal_unit(op, rng);
    const CutReport report = strong_sweep(t, x);  // throws logic_error on violation
    CHECK(report.phi <= 2.0 * std::sqrt(op.rayleigh(x)) + 1e-9);
  }
}

TEST_CASE("left witness bounds twice the conductance") {
  Rng rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = testutil::random_certify_instance(trial, rng.uniform_int(3, 6), rng);
    const Subset full = full_mask(t.n());
    Subset s = 0;
    while (s == 0 || s == full || t.volume(s) == 0 || t.volume(s) == t.total_volume())
      s = static_cast<Subset>(rng.uniform_int(1, static_cast<int>(full) - 1));
    const LeftWitness witness = left_witness(t, s);
    const double phi = conductance_of_set(t, s).phi;
    CHECK(std::min(witness.rayleigh_plus, witness.rayleigh_minus) <= 2.0 * phi + 1e-9);
  }
}

TEST_CASE("certification on tight and fixture instances") {
  CertifyOptions options;
  options.seed = 3;

  const auto cert_k4 = certify(complete4(), options);
  CHECK(cert_k4.phi == doctest::Approx(2.0 / 3.0));
  CHECK(cert_k4.lambda_tilde == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
  CHECK(cert_k4.sandwich_holds);

  const auto cert_c4 = certify(cycle4(), options);
  CHECK(cert_c4.phi == doctest::Approx(0.5));
  CHECK(cert_c4.sandwich_holds);

  const auto cert_arcs = certify(build_directed_cut(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), options);
  CHECK(cert_arcs.sandwich_holds);

  const auto cert_hyper = certify(build_hypergraph_cut(4, {{0, 1, 2}, {1, 2, 3}}), options);
  CHECK(cert_hyper.sandwich_holds);
}

TEST_CASE("certification rejects unscaled or non-vanishing input") {
  Rng rng(89);
  std::vector<SubmodularOracle> functions;
  functions.push_back(testutil::random_table(3, {0, 1, 2}, rng));  // F(V) > 0
  const SubmodularTransformation bad(GroundSet(3), std::move(functions));
  CHECK_THROWS_AS(certify(bad), InputError);

  const SubmodularTransformation empty(GroundSet(3), {});
  CHECK_THROWS_AS(certify(empty), InputError);
}
