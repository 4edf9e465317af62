#include "sublap/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "sublap/simplex.hpp"

namespace sublap {

namespace {

Eigen::VectorXd support_to_ground(const SubmodularOracle& oracle, const Eigen::VectorXd& v) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(oracle.ground_size());
  for (int i = 0; i < oracle.support_size(); ++i) g(oracle.support()[i]) = v(i);
  return g;
}

Eigen::VectorXd ground_to_support(const SubmodularOracle& oracle, const Eigen::VectorXd& g) {
  Eigen::VectorXd v(oracle.support_size());
  for (int i = 0; i < oracle.support_size(); ++i) v(i) = g(oracle.support()[i]);
  return v;
}

double subset_sum(const Eigen::VectorXd& w, Subset s) {
  double total = 0.0;
  for (int i = 0; i < w.size(); ++i)
    if (s >> i & 1) total += w(i);
  return total;
}

}  // namespace

PolytopeHandle::PolytopeHandle(SubmodularOracle oracle)
    : oracle_(std::move(oracle)),
      translation_(Eigen::VectorXd::Zero(oracle_.support_size())),
      center_(Eigen::VectorXd::Zero(oracle_.support_size())) {}

PolytopeHandle::PolytopeHandle(SubmodularOracle oracle, Eigen::VectorXd translation,
                               double l1_radius, Eigen::VectorXd ball_center)
    : oracle_(std::move(oracle)),
      translation_(std::move(translation)),
      radius_(l1_radius),
      center_(std::move(ball_center)) {
  if (translation_.size() != oracle_.support_size() || center_.size() != oracle_.support_size())
    throw InputError("polytope handle: dimension mismatch");
  if (l1_radius <= 0) throw InputError("polytope handle: radius must be positive");
}

double PolytopeHandle::constraint_value(Subset local_mask) const {
  return oracle_.evaluate_local(local_mask) - subset_sum(translation_, local_mask);
}

MembershipReport membership(const PolytopeHandle& handle, const Eigen::VectorXd& w,
                            double tolerance) {
  const int s = handle.dim();
  if (s > 16) throw CapabilityError("membership: support larger than 16");
  if (w.size() != s) throw InputError("membership: dimension mismatch");

  MembershipReport report;
  const Subset full = full_mask(s);
  for (Subset t = 1; t <= full; ++t) {
    double excess = subset_sum(w, t) - handle.constraint_value(t);
    if (t == full) excess = std::abs(excess);  // equality constraint
    if (excess > report.worst_violation) {
      report.worst_violation = excess;
      report.worst_set = t;
    }
  }
  if (handle.has_ball()) {
    const double excess = (w - handle.ball_center()).lpNorm<1>() - handle.radius();
    if (excess > report.worst_violation) {
      report.worst_violation = excess;
      report.l1_violated = true;
    }
  }
  report.member = report.worst_violation <= tolerance;
  return report;
}

LinearOptResult linear_optimize(const PolytopeHandle& handle, const Eigen::VectorXd& c) {
  const int s = handle.dim();
  if (c.size() != s) throw InputError("linear_optimize: dimension mismatch");

  if (!handle.has_ball()) {
    const PolytopeVertex vertex =
        greedy_vertex(handle.oracle(), support_to_ground(handle.oracle(), c));
    LinearOptResult result;
    result.w = ground_to_support(handle.oracle(), vertex.w) - handle.translation();
    result.value = c.dot(result.w);
    return result;
  }

  if (s > 12) throw CapabilityError("linear_optimize: l1-intersection support larger than 12");

  // Variables y+ and y- with w = center + y+ - y-; the l1 bound becomes
  // sum(y+ + y-) <= r, exact because optima never need overlapping parts.
  const Subset full = full_mask(s);
  const int rows_ub = static_cast<int>(full) - 1 + 1;  // proper subsets + l1 row
  Eigen::MatrixXd a_ub = Eigen::MatrixXd::Zero(rows_ub, 2 * s);
  Eigen::VectorXd b_ub(rows_ub);
  int row = 0;
  for (Subset t = 1; t < full; ++t, ++row) {
    for (int i = 0; i < s; ++i) {
      if (t >> i & 1) {
        a_ub(row, i) = 1.0;
        a_ub(row, s + i) = -1.0;
      }
    }
    b_ub(row) = handle.constraint_value(t) - subset_sum(handle.ball_center(), t);
  }
  a_ub.row(row).setOnes();
  b_ub(row) = handle.radius();

  Eigen::MatrixXd a_eq = Eigen::MatrixXd::Zero(1, 2 * s);
  a_eq.block(0, 0, 1, s).setOnes();
  a_eq.block(0, s, 1, s).setConstant(-1.0);
  Eigen::VectorXd b_eq(1);
  b_eq(0) = handle.constraint_value(full) - handle.ball_center().sum();

  Eigen::VectorXd cost(2 * s);
  cost.head(s) = c;
  cost.tail(s) = -c;

  const LpResult lp = solve_lp(a_ub, b_ub, a_eq, b_eq, cost);
  LinearOptResult result;
  result.w = handle.ball_center() + lp.x.head(s) - lp.x.tail(s);
  result.value = c.dot(result.w);
  result.iterations = lp.iterations;
  return result;
}

WolfeResult wolfe_min_norm(const PolytopeHandle& handle, double eps, long iteration_cap) {
  if (eps <= 0) throw InputError("wolfe_min_norm: tolerance must be positive");
  const int s = handle.dim();

  std::vector<Eigen::VectorXd> corral;
  std::vector<double> lambda;
  corral.push_back(linear_optimize(handle, Eigen::VectorXd::Zero(s)).w);
  lambda.push_back(1.0);
  Eigen::VectorXd x = corral[0];

  WolfeResult result;
  const double stop_gap = eps * eps / 2.0;

  for (long iter = 0; iter < iteration_cap; ++iter) {
    result.iterations = iter + 1;
    const Eigen::VectorXd v = linear_optimize(handle, -x).w;
    const double gap = x.dot(x) - x.dot(v);
    if (gap <= stop_gap) {
      result.converged = true;
      break;
    }
    bool duplicate = false;
    for (const auto& p : corral)
      if ((p - v).lpNorm<Eigen::Infinity>() < 1e-12) duplicate = true;
    if (duplicate) break;  // numerically stuck; best available iterate

    corral.push_back(v);
    lambda.push_back(0.0);

    // Minor cycle: move to the affine minimizer, trimming vertices whose
    // coefficient would go non-positive.
    while (true) {
      const int k = static_cast<int>(corral.size());
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) kkt(i, j) = 2.0 * corral[i].dot(corral[j]);
      kkt.block(0, k, k, 1).setOnes();
      kkt.block(k, 0, 1, k).setOnes();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      rhs(k) = 1.0;
      const Eigen::VectorXd alpha = kkt.fullPivLu().solve(rhs).head(k);

      if (alpha.minCoeff() > 1e-12) {
        for (int i = 0; i < k; ++i) lambda[i] = alpha(i);
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < k; ++i)
        if (alpha(i) <= 1e-12 && lambda[i] - alpha(i) > 1e-15)
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha(i)));
      for (int i = 0; i < k; ++i) lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha(i);
      for (int i = k - 1; i >= 0; --i) {
        if (lambda[i] <= 1e-12) {
          corral.erase(corral.begin() + i);
          lambda.erase(lambda.begin() + i);
        }
      }
      double total = 0.0;
      for (double l : lambda) total += l;
      for (double& l : lambda) l /= total;
      if (static_cast<int>(corral.size()) == k) break;  // nothing trimmed
    }
    x.setZero();
    for (std::size_t i = 0; i < corral.size(); ++i) x += lambda[i] * corral[i];
  }

  result.w = x;
  result.squared_norm = x.squaredNorm();
  if (!result.converged && result.iterations >= iteration_cap)
    throw WolfeConvergenceError("wolfe_min_norm: iteration cap exceeded", result);
  result.converged = true;
  return result;
}

namespace {

void enumerate_lattice(int pos, int n, int budget, std::vector<int>& a, double scale,
                       std::vector<Eigen::VectorXd>& out) {
  if (out.size() > 5000000) throw CapabilityError("l1_ball_cover: cover too large");
  if (pos == n) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p(i) = a[i] * scale;
    out.push_back(std::move(p));
    return;
  }
  for (int v = -budget; v <= budget; ++v) {
    a[pos] = v;
    enumerate_lattice(pos + 1, n, budget - std::abs(v), a, scale, out);
  }
}

}  // namespace

CoverSet l1_ball_cover(int n, double eps) {
  if (eps <= 0 || eps > 1) throw InputError("l1_ball_cover: eps must be in (0, 1]");
  if (n < 1) throw InputError("l1_ball_cover: dimension must be positive");
  const int k = static_cast<int>(std::ceil(1.0 / (eps * eps) - 1e-12));

  CoverSet cover;
  cover.dim = n;
  cover.radius = eps;
  cover.provenance = CoverProvenance::l1_ball;
  std::vector<int> a(n, 0);
  enumerate_lattice(0, n, k, a, 1.0 / k, cover.points);
  return cover;
}

CoverSet cover_base_polytope_at_scale(const SubmodularOracle& oracle, double r, double eps) {
  const int s = oracle.support_size();
  if (s > 10) throw CapabilityError("cover_base_polytope_at_scale: support larger than 10");
  if (r <= 0 || eps <= 0) throw InputError("cover_base_polytope_at_scale: need r > 0, eps > 0");

  const double rel = std::min(1.0, eps / (3.0 * r));
  const CoverSet grid = l1_ball_cover(s, rel);

  CoverSet cover;
  cover.dim = s;
  cover.radius = eps;
  cover.provenance = CoverProvenance::algorithm1;

  const PolytopeHandle verify(oracle, Eigen::VectorXd::Zero(s), r, Eigen::VectorXd::Zero(s));
  for (const auto& unit_p : grid.points) {
    const Eigen::VectorXd p = r * unit_p;
    if (membership(verify, p)) {  // min-norm point of the shifted set is 0
      cover.points.push_back(p);
      continue;
    }
    try {
      const PolytopeHandle handle(oracle, p, r, -p);
      const WolfeResult wolfe = wolfe_min_norm(handle, eps / 3.0);
      if (wolfe.w.norm() <= 2.0 * eps / 3.0 + 1e-12) {
        const Eigen::VectorXd q = p + wolfe.w;
        if (membership(verify, q, 1e-7))
          cover.points.push_back(q);
        else
          ++cover.skipped;
      }
    } catch (const InfeasibleError&) {
      // This grid point sees an empty polytope slice; nothing to add.
    } catch (const WolfeConvergenceError&) {
      ++cover.skipped;
    }
  }
  return cover;
}

CoverSet cover_base_polytope(const SubmodularOracle& oracle, double eps) {
  if (eps <= 0) throw InputError("cover_base_polytope: eps must be positive");
  if (oracle.infinity_norm() <= 1e-12 || oracle.singleton_max() <= 1e-12)
    throw InputError("cover_base_polytope: function is identically zero or has no positive singleton");

  const int s = oracle.support_size();
  const double k = oracle.singleton_max();
  int levels = std::max(0, static_cast<int>(std::ceil(std::log2(static_cast<double>(s)))));
  while (std::ldexp(k, levels) < 2.0 * oracle.infinity_norm()) ++levels;

  CoverSet cover;
  cover.dim = s;
  cover.provenance = CoverProvenance::multiscale;
  cover.radius = eps * hausdorff_norm(oracle).value;
  for (int i = 0; i <= levels; ++i) {
    const double r = std::ldexp(k, i);
    CoverSet scale = cover_base_polytope_at_scale(oracle, r, (eps / 2.0) * r);
    cover.skipped += scale.skipped;
    for (auto& p : scale.points) cover.points.push_back(std::move(p));
  }
  return cover;
}

HausdorffNorm hausdorff_norm(const SubmodularOracle& oracle) {
  HausdorffNorm norm;
  if (oracle.support_size() <= 8) {
    for (const auto& vertex : enumerate_extreme_points(oracle))
      norm.value = std::max(norm.value, vertex.w.norm());
  } else {
    norm.value = 2.0 * oracle.infinity_norm();
    norm.is_bound = true;
  }
  return norm;
}

}  // namespace sublap
