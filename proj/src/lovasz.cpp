#include "sublap/lovasz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace sublap {

std::vector<int> descending_order(const Eigen::VectorXd& x, const std::vector<int>& indices) {
  std::vector<int> order = indices;
  std::stable_sort(order.begin(), order.end(), [&x](int a, int b) {
    if (x(a) != x(b)) return x(a) > x(b);
    return a < b;
  });
  return order;
}

PolytopeVertex greedy_vertex(const SubmodularOracle& oracle, const Eigen::VectorXd& x) {
  if (x.size() != oracle.ground_size()) throw InputError("greedy_vertex: dimension mismatch");
  if (!x.allFinite()) throw InputError("greedy_vertex: non-finite input");

  PolytopeVertex vertex;
  vertex.order = descending_order(x, oracle.support());
  vertex.w = Eigen::VectorXd::Zero(oracle.ground_size());
  Subset prefix = 0;
  double prev = 0.0;
  for (int v : vertex.order) {
    prefix |= Subset{1} << v;
    const double cur = oracle.evaluate(prefix);
    vertex.w(v) = cur - prev;
    prev = cur;
  }
  return vertex;
}

double lovasz_eval(const SubmodularOracle& oracle, const Eigen::VectorXd& x) {
  return greedy_vertex(oracle, x).w.dot(x);
}

double chain_sum_eval(const SubmodularOracle& oracle, const Eigen::VectorXd& x) {
  const int n = oracle.ground_size();
  if (x.size() != n) throw InputError("chain_sum_eval: dimension mismatch");
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  const std::vector<int> order = descending_order(x, all);

  double value = 0.0;
  Subset prefix = 0;
  for (int k = 0; k < n; ++k) {
    prefix |= Subset{1} << order[k];
    const double gap = (k + 1 < n) ? x(order[k]) - x(order[k + 1]) : x(order[k]);
    value += oracle.evaluate(prefix) * gap;
  }
  return value;
}

double threshold_integral_eval(const SubmodularOracle& oracle, const Eigen::VectorXd& x) {
  const int n = oracle.ground_size();
  if (x.size() != n) throw InputError("threshold_integral_eval: dimension mismatch");
  for (int v = 0; v < n; ++v)
    if (x(v) < -1e-12 || x(v) > 1.0 + 1e-12)
      throw InputError("threshold_integral_eval: x must lie in [0,1]^V");

  // Distinct positive coordinate values t_1 < ... < t_k. On (t_{j-1}, t_j]
  // the threshold set is {v : x(v) >= t_j}; above t_k it is empty.
  std::vector<double> levels(x.data(), x.data() + n);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double value = 0.0;
  double prev = 0.0;
  for (double t : levels) {
    if (t <= 0.0) continue;
    Subset s = 0;
    for (int v = 0; v < n; ++v)
      if (x(v) >= t) s |= Subset{1} << v;
    value += oracle.evaluate(s) * (t - prev);
    prev = t;
  }
  return value;
}

std::vector<PolytopeVertex> enumerate_extreme_points(const SubmodularOracle& oracle) {
  const int s = oracle.support_size();
  if (s > 8) throw CapabilityError("enumerate_extreme_points: support larger than 8");

  std::vector<int> perm = oracle.support();
  std::sort(perm.begin(), perm.end());
  std::map<std::vector<long long>, bool> seen;
  std::vector<PolytopeVertex> vertices;
  do {
    PolytopeVertex vertex;
    vertex.order = perm;
    vertex.w = Eigen::VectorXd::Zero(oracle.ground_size());
    Subset prefix = 0;
    double prev = 0.0;
    for (int v : perm) {
      prefix |= Subset{1} << v;
      const double cur = oracle.evaluate(prefix);
      vertex.w(v) = cur - prev;
      prev = cur;
    }
    std::vector<long long> key(oracle.ground_size());
    for (int v = 0; v < oracle.ground_size(); ++v) key[v] = std::llround(vertex.w(v) * 1e9);
    if (!seen.count(key)) {
      seen[key] = true;
      vertices.push_back(std::move(vertex));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return vertices;
}

}  // namespace sublap
