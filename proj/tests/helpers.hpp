#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sublap/oracle.hpp"
#include "sublap/rng.hpp"
#include "sublap/spectral.hpp"

namespace testutil {

using namespace sublap;

inline void shuffle_ints(std::vector<int>& v, Rng& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
    std::swap(v[i], v[rng.uniform_int(0, i)]);
}

/// Random spanning tree plus a few extra edges; every vertex is covered.
inline std::vector<Edge> random_connected_edges(int n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  shuffle_ints(perm, rng);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({perm[rng.uniform_int(0, i - 1)], perm[i]});
  const int extras = n >= 2 ? rng.uniform_int(0, n) : 0;
  for (int i = 0; i < extras; ++i) {
    const int u = rng.uniform_int(0, n - 1);
    int v = rng.uniform_int(0, n - 1);
    if (u == v) continue;
    edges.push_back({u, v});
  }
  return edges;
}

struct GraphInstance {
  int n;
  std::vector<Edge> edges;
  SubmodularTransformation transformation;
};

inline GraphInstance random_graph_instance(int n, Rng& rng) {
  auto edges = random_connected_edges(n, rng);
  auto t = build_undirected_cut(n, edges);
  return {n, std::move(edges), std::move(t)};
}

inline SubmodularTransformation random_graph(int n, Rng& rng) {
  return build_undirected_cut(n, random_connected_edges(n, rng));
}

inline SubmodularTransformation random_digraph(int n, Rng& rng) {
  std::vector<Arc> arcs;
  for (const Edge& e : random_connected_edges(n, rng)) {
    if (rng.uniform() < 0.5)
      arcs.push_back({e.u, e.v});
    else
      arcs.push_back({e.v, e.u});
    if (rng.uniform() < 0.3) arcs.push_back({arcs.back().head, arcs.back().tail});
  }
  if (static_cast<int>(arcs.size()) > 20) arcs.resize(20);
  // A truncated arc list may drop a vertex; the tree arcs come first, so
  // only the doubled reversals can fall off and coverage is preserved.
  return build_directed_cut(n, arcs);
}

inline SubmodularTransformation random_hypergraph(int n, Rng& rng) {
  std::vector<std::vector<int>> hyperedges;
  for (const Edge& e : random_connected_edges(n, rng)) hyperedges.push_back({e.u, e.v});
  const int extras = rng.uniform_int(1, 3);
  for (int i = 0; i < extras && static_cast<int>(hyperedges.size()) < 20; ++i) {
    const int size = rng.uniform_int(2, std::min(n, 4));
    std::vector<int> vertices(n);
    std::iota(vertices.begin(), vertices.end(), 0);
    shuffle_ints(vertices, rng);
    vertices.resize(size);
    std::sort(vertices.begin(), vertices.end());
    hyperedges.push_back(vertices);
  }
  if (static_cast<int>(hyperedges.size()) > 20) hyperedges.resize(20);
  return build_hypergraph_cut(n, hyperedges);
}

inline SubmodularTransformation random_mutual_information(int vars, Rng& rng) {
  const std::vector<int> alphabet(vars, 2);
  std::vector<double> p(std::size_t{1} << vars);
  double total = 0.0;
  for (double& value : p) {
    value = rng.uniform(0.05, 1.0);
    total += value;
  }
  for (double& value : p) value /= total;
  return build_mutual_information(JointDistribution(alphabet, p));
}

/// Symmetrized concave-of-modular table: values in [0,1], F(empty) =
/// F(support) = 0, symmetric and submodular by construction.
inline SubmodularOracle random_symmetric_table(int ground_size, const std::vector<int>& support,
                                               Rng& rng) {
  const int s = static_cast<int>(support.size());
  std::vector<double> weight(s);
  double total = 0.0;
  for (double& w : weight) {
    w = rng.uniform(0.3, 1.0);
    total += w;
  }
  std::vector<double> values(std::size_t{1} << s, 0.0);
  double max_value = 0.0;
  for (Subset mask = 0; mask < (Subset{1} << s); ++mask) {
    double inside = 0.0;
    for (int i = 0; i < s; ++i)
      if (mask >> i & 1) inside += weight[i];
    values[mask] = std::sqrt(inside) + std::sqrt(total - inside) - std::sqrt(total);
    max_value = std::max(max_value, values[mask]);
  }
  if (max_value > 1e-12)
    for (double& v : values) v /= max_value;
  return build_table_function(ground_size, support, values);
}

/// Concave-of-modular table that does not vanish on its support.
inline SubmodularOracle random_table(int ground_size, const std::vector<int>& support, Rng& rng) {
  const int s = static_cast<int>(support.size());
  std::vector<double> weight(s);
  for (double& w : weight) w = rng.uniform(0.3, 1.0);
  std::vector<double> values(std::size_t{1} << s, 0.0);
  for (Subset mask = 0; mask < (Subset{1} << s); ++mask) {
    double inside = 0.0;
    for (int i = 0; i < s; ++i)
      if (mask >> i & 1) inside += weight[i];
    values[mask] = std::sqrt(inside);
  }
  return build_table_function(ground_size, support, values);
}

inline std::vector<int> random_support(int n, int size, Rng& rng) {
  std::vector<int> vertices(n);
  std::iota(vertices.begin(), vertices.end(), 0);
  shuffle_ints(vertices, rng);
  vertices.resize(size);
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

inline SubmodularTransformation random_table_transformation(int n, Rng& rng) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<SubmodularOracle> functions;
  functions.push_back(random_symmetric_table(n, all, rng));
  const int extras = rng.uniform_int(1, 3);
  for (int i = 0; i < extras; ++i) {
    const int size = rng.uniform_int(2, std::min(n, 4));
    functions.push_back(random_symmetric_table(n, random_support(n, size, rng), rng));
  }
  return SubmodularTransformation(GroundSet(n), std::move(functions));
}

/// Rotates through the five instance families accepted by certification.
inline SubmodularTransformation random_certify_instance(int family, int n, Rng& rng) {
  switch (family % 5) {
    case 0: return random_graph(n, rng);
    case 1: return random_digraph(n, rng);
    case 2: return random_hypergraph(n, rng);
    case 3: return random_mutual_information(std::min(n, 3), rng);
    default: return random_table_transformation(n, rng);
  }
}

/// I - D^{-1/2} A D^{-1/2} built straight from the edge list.
inline Eigen::MatrixXd dense_normalized_laplacian(int n, const std::vector<Edge>& edges) {
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
  for (const Edge& e : edges) {
    adjacency(e.u, e.v) += 1.0;
    adjacency(e.v, e.u) += 1.0;
    degree(e.u) += 1.0;
    degree(e.v) += 1.0;
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (adjacency(u, v) != 0.0) lap(u, v) -= adjacency(u, v) / std::sqrt(degree(u) * degree(v));
  return lap;
}

inline Eigen::VectorXd random_orthogonal_unit(const LaplacianOperator& op, Rng& rng) {
  for (;;) {
    Eigen::VectorXd x = op.project_out_trivial(rng.normal_vector(op.n()));
    if (x.norm() > 1e-8) return x / x.norm();
  }
}

inline Eigen::VectorXd project_onto_simplex(Eigen::VectorXd v) {
  const int k = static_cast<int>(v.size());
  std::vector<double> sorted(v.data(), v.data() + k);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0, theta = 0.0;
  int count = 0;
  for (int i = 0; i < k; ++i) {
    running += sorted[i];
    const double candidate = (running - 1.0) / (i + 1);
    if (sorted[i] - candidate > 0) {
      theta = candidate;
      count = i + 1;
    }
  }
  if (count == 0) theta = (running - 1.0) / k;
  for (int i = 0; i < k; ++i) v(i) = std::max(0.0, v(i) - theta);
  return v;
}

/// Independent minimum-norm oracle: accelerated projected gradient over
/// convex-combination weights of an explicit vertex list. Returns the
/// squared norm of the best point found.
inline double simplex_qp_min_norm2(const std::vector<Eigen::VectorXd>& vertices,
                                   int iterations = 20000) {
  const int k = static_cast<int>(vertices.size());
  const int dim = static_cast<int>(vertices.front().size());
  Eigen::MatrixXd basis(dim, k);
  for (int i = 0; i < k; ++i) basis.col(i) = vertices[i];
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const double lipschitz =
      2.0 * std::max(1e-12, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram)
                                .eigenvalues()
                                .maxCoeff());
  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(k, 1.0 / k);
  Eigen::VectorXd momentum = lambda;
  double t_prev = 1.0;
  double best = lambda.dot(gram * lambda);
  for (int iter = 0; iter < iterations; ++iter) {
    const Eigen::VectorXd next =
        project_onto_simplex(momentum - (2.0 / lipschitz) * (gram * momentum));
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
    momentum = next + ((t_prev - 1.0) / t_next) * (next - lambda);
    lambda = next;
    t_prev = t_next;
    best = std::min(best, lambda.dot(gram * lambda));
  }
  return best;
}

/// Restriction of a ground-dense vector to an oracle's support coordinates.
inline Eigen::VectorXd restrict_to_support(const SubmodularOracle& oracle,
                                           const Eigen::VectorXd& w) {
  Eigen::VectorXd out(oracle.support_size());
  for (int i = 0; i < oracle.support_size(); ++i) out(i) = w(oracle.support()[i]);
  return out;
}

}  // namespace testutil
