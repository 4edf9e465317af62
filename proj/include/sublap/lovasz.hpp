#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sublap/oracle.hpp"

namespace sublap {

/// Extreme point of B(F) together with the greedy ordering that produced it.
/// The ordering lists ground indices; w is dense over the ground set and
/// vanishes outside the oracle's support.
struct PolytopeVertex {
  Eigen::VectorXd w;
  std::vector<int> order;
};

/// Ground indices sorted by descending x value, ties by ascending index.
std::vector<int> descending_order(const Eigen::VectorXd& x, const std::vector<int>& indices);

/// Edmonds' greedy extreme point: w(v_i) = F(v_i | {v_1,...,v_{i-1}}) along
/// the descending order of x restricted to the support. Maximizes <w', x>
/// over w' in B(F).
PolytopeVertex greedy_vertex(const SubmodularOracle& oracle, const Eigen::VectorXd& x);

/// Lovasz extension f(x) = max_{w in B(F)} <w, x>, via the greedy vertex.
double lovasz_eval(const SubmodularOracle& oracle, const Eigen::VectorXd& x);

/// Independent evaluator: f(x) = sum_k F(S_k)(x(v_k) - x(v_{k+1})) + F(V)x(v_n)
/// over the descending order of the full ground set.
double chain_sum_eval(const SubmodularOracle& oracle, const Eigen::VectorXd& x);

/// Independent evaluator for x in [0,1]^V: the exact value of
/// integral_0^1 F({v : x(v) >= tau}) dtau (the integrand is piecewise
/// constant, so the sum over distinct coordinate values is exact).
double threshold_integral_eval(const SubmodularOracle& oracle, const Eigen::VectorXd& x);

/// All greedy vertices over all support permutations, deduplicated at
/// l-infinity tolerance 1e-9. Support size capped at 8.
std::vector<PolytopeVertex> enumerate_extreme_points(const SubmodularOracle& oracle);

}  // namespace sublap
