#include "sublap/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "sublap/lovasz.hpp"
#include "sublap/polytope.hpp"
#include "sublap/rng.hpp"
#include "sublap/spectral.hpp"

namespace sublap {

namespace {

std::vector<std::vector<Eigen::VectorXd>> build_covers(const SubmodularTransformation& t,
                                                       double eps) {
  std::vector<std::vector<Eigen::VectorXd>> covers;
  covers.reserve(t.functions().size());
  for (const auto& f : t.functions()) {
    std::vector<Eigen::VectorXd> points;
    const bool degenerate = f.infinity_norm() <= 1e-12 || f.singleton_max() <= 1e-12;
    if (eps <= 0 || degenerate) {
      if (f.support_size() > 8)
        throw CapabilityError("sdp build: vertex mode needs support at most 8");
      for (const auto& vertex : enumerate_extreme_points(f)) points.push_back(vertex.w);
    } else {
      const CoverSet cover = cover_base_polytope(f, eps);
      for (const auto& p : cover.points) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(t.n());
        for (int i = 0; i < f.support_size(); ++i) w(f.support()[i]) = p(i);
        points.push_back(std::move(w));
      }
    }
    covers.push_back(std::move(points));
  }
  return covers;
}

SdpInstance build_common(const SubmodularTransformation& t, SdpMode mode, double eps,
                         double scale_factor) {
  SdpInstance instance;
  instance.mode = mode;
  instance.transformation = std::make_shared<SubmodularTransformation>(t);
  instance.n = t.n();
  instance.m = t.m();
  instance.embed_dim = t.n() + 4;
  instance.eps = std::max(eps, 0.0);
  instance.vertex_mode = eps <= 0;
  instance.scale_factor = scale_factor;
  instance.covers = build_covers(t, eps);
  return instance;
}

Eigen::VectorXd degree_vector(const SubmodularTransformation& t) {
  Eigen::VectorXd d(t.n());
  for (int v = 0; v < t.n(); ++v) d(v) = static_cast<double>(t.degree(v));
  return d;
}

// Exact projection onto the two degree constraints: center the columns in
// the d-weighted mean, then rescale the d-weighted Frobenius norm to 1.
void project_feasible(Eigen::MatrixXd& x, const Eigen::VectorXd& d) {
  const Eigen::VectorXd mean = (x * d) / d.sum();
  x.colwise() -= mean;
  double norm2 = 0.0;
  for (int v = 0; v < x.cols(); ++v) norm2 += d(v) * x.col(v).squaredNorm();
  if (norm2 <= 1e-300) throw InputError("sdp solve: iterate collapsed to zero");
  x /= std::sqrt(norm2);
}

// General-mode per-point term: ||a||^2 + min <a, u> over u with
// ||u|| = ||a|| and <u, v1> >= ||u||^2, the auxiliary vector eliminated in
// closed form. Always in [0, ||a||^2].
double general_term(const Eigen::VectorXd& a) {
  const double rho2 = a.squaredNorm();
  const double rho = std::sqrt(rho2);
  if (rho <= 1e-300) return 0.0;
  if (a(0) <= -rho2) return 0.0;  // the unconstrained minimizer -rho a/||a|| is feasible
  const double q = std::sqrt(std::max(0.0, rho2 - a(0) * a(0)));
  const double s = std::sqrt(std::max(0.0, 1.0 - rho2));
  return rho2 + a(0) * rho2 - q * rho * s;
}

Eigen::VectorXd general_term_gradient(const Eigen::VectorXd& a) {
  const int dim = static_cast<int>(a.size());
  const double rho2 = a.squaredNorm();
  const double rho = std::sqrt(rho2);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(dim);
  if (rho <= 1e-12 || a(0) <= -rho2) return grad;

  const double q = std::sqrt(std::max(0.0, rho2 - a(0) * a(0)));
  const double s = std::sqrt(std::max(1e-12, 1.0 - rho2));
  grad = 2.0 * a + 2.0 * a(0) * a;
  grad(0) += rho2;
  // d(q rho s)/da, with dq = (0, a_perp)/q, drho = a/rho, ds = -a/s.
  if (q > 1e-12) {
    Eigen::VectorXd perp = a;
    perp(0) = 0.0;
    grad -= (rho * s / q) * perp;
  }
  grad -= (q * s / rho) * a;
  grad += (q * rho / s) * a;
  return grad;
}

// General-mode constraint value for one cover point. The free auxiliary can
// cancel most of ||Xw||^2 when the bias coordinate is small, so the slack is
// floored at ||Xw||^2 / 2 for positive-bias points; the rounding analysis
// needs exactly that inequality and the rank-1 warm start satisfies it.
double general_constraint(const Eigen::VectorXd& a) {
  return std::max(general_term(a), 0.5 * a.squaredNorm());
}

double objective_value(const SdpInstance& inst, const Eigen::MatrixXd& x,
                       std::vector<double>* slack = nullptr) {
  if (slack) slack->assign(inst.m, 0.0);
  double total = 0.0;
  for (int e = 0; e < inst.m; ++e) {
    double worst = 0.0;
    for (const auto& w : inst.covers[e]) {
      const Eigen::VectorXd a = x * w;
      const double term =
          inst.mode == SdpMode::symmetric ? a.squaredNorm() : general_constraint(a);
      worst = std::max(worst, term);
    }
    if (slack) (*slack)[e] = worst;
    total += worst;
  }
  return inst.mode == SdpMode::symmetric ? total : 0.5 * total;
}

Eigen::MatrixXd objective_gradient(const SdpInstance& inst, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(x.rows(), x.cols());
  for (int e = 0; e < inst.m; ++e) {
    double worst = -1.0;
    const Eigen::VectorXd* best_w = nullptr;
    Eigen::VectorXd best_a;
    for (const auto& w : inst.covers[e]) {
      const Eigen::VectorXd a = x * w;
      const double term =
          inst.mode == SdpMode::symmetric ? a.squaredNorm() : general_constraint(a);
      if (term > worst) {
        worst = term;
        best_w = &w;
        best_a = a;
      }
    }
    if (!best_w || worst <= 0.0) continue;
    if (inst.mode == SdpMode::symmetric) {
      grad += (2.0 * best_a) * best_w->transpose();
    } else if (general_term(best_a) >= 0.5 * best_a.squaredNorm()) {
      grad += 0.5 * general_term_gradient(best_a) * best_w->transpose();
    } else {
      grad += 0.5 * best_a * best_w->transpose();  // the half-norm floor is active
    }
  }
  return grad;
}

Eigen::VectorXd rank_one_warm_start(const SdpInstance& inst, std::uint64_t seed) {
  const LaplacianOperator op(*inst.transformation, LaplacianMode::normalized);
  const auto [lambda, eigen] = reference_lambda(op, 2, seed);
  Eigen::VectorXd z(inst.n);
  for (int v = 0; v < inst.n; ++v)
    z(v) = eigen.z(v) / std::sqrt(static_cast<double>(inst.transformation->degree(v)));
  return z;
}

Eigen::VectorXd best_by_rayleigh(const SubmodularTransformation& t,
                                 const std::vector<Eigen::VectorXd>& candidates) {
  const LaplacianOperator op(t, LaplacianMode::normalized);
  const Eigen::VectorXd* best = nullptr;
  double best_value = 0.0;
  for (const auto& c : candidates) {
    if (c.norm() <= 1e-12) continue;
    const Eigen::VectorXd projected = op.project_out_trivial(c);
    if (projected.norm() <= 1e-12) continue;
    const double value = op.rayleigh(projected);
    if (!best || value < best_value) {
      best = &c;
      best_value = value;
    }
  }
  if (!best) throw InputError("sdp rounding: all candidates degenerate");
  return op.project_out_trivial(*best);
}

}  // namespace

SdpInstance build_symmetric(const SubmodularTransformation& t, double eps) {
  if (!t.is_symmetric()) throw InputError("build_symmetric requires a symmetric transformation");
  return build_common(t, SdpMode::symmetric, eps, 1.0);
}

SdpInstance build_general(const SubmodularTransformation& scaled, double eps,
                          double scale_factor) {
  if (!scaled.vanishes_on_ground()) throw InputError("build_general requires F(V) = 0");
  for (const auto& f : scaled.functions()) {
    if (f.infinity_norm() > 0.01 + 1e-12)
      throw InputError("build_general: values exceed 1/100; run scale_for_general_sdp first");
  }
  return build_common(scaled, SdpMode::general, eps, scale_factor);
}

SdpSolution solve(const SdpInstance& instance, std::uint64_t seed, long max_iterations,
                  const std::optional<Eigen::VectorXd>& warm_z) {
  SdpSolution solution;
  solution.seed = seed;
  solution.x = Eigen::MatrixXd::Zero(instance.embed_dim, instance.n);
  if (instance.m == 0 || instance.n < 2) {
    solution.converged = true;
    return solution;
  }

  const Eigen::VectorXd d = degree_vector(*instance.transformation);
  const Eigen::VectorXd z = warm_z ? *warm_z : rank_one_warm_start(instance, seed);
  if (z.size() != instance.n) throw InputError("sdp solve: warm start dimension mismatch");

  // Rank-1 start in the second coordinate; the first is reserved for v1.
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(instance.embed_dim, instance.n);
  x.row(1) = z.transpose();
  project_feasible(x, d);

  Eigen::MatrixXd best_x = x;
  double best_value = objective_value(instance, x);

  double step = 0.1 / std::max(1.0, best_value);
  for (long iter = 0; iter < max_iterations; ++iter) {
    solution.iterations = iter + 1;
    const Eigen::MatrixXd grad = objective_gradient(instance, x);
    const double grad_norm = grad.norm();
    if (grad_norm <= 1e-14) break;

    bool accepted = false;
    const double current = objective_value(instance, x);
    for (int tries = 0; tries < 25; ++tries) {
      Eigen::MatrixXd candidate = x - step * grad;
      project_feasible(candidate, d);
      const double value = objective_value(instance, candidate);
      if (value <= current) {
        x = std::move(candidate);
        if (value < best_value) {
          best_value = value;
          best_x = x;
        }
        step *= 1.3;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent direction at line-search resolution
  }

  solution.x = best_x;
  solution.objective = objective_value(instance, best_x, &solution.slack);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(instance.embed_dim);
  for (int v = 0; v < instance.n; ++v) center += d(v) * solution.x.col(v);
  solution.max_residual = center.norm();
  solution.converged = true;
  return solution;
}

Eigen::VectorXd round_symmetric(const SdpInstance& instance, const SdpSolution& solution,
                                std::uint64_t seed, int draws) {
  if (instance.mode != SdpMode::symmetric)
    throw InputError("round_symmetric needs a symmetric instance");
  Rng rng(seed);
  const Eigen::VectorXd d = degree_vector(*instance.transformation);
  std::vector<Eigen::VectorXd> candidates;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd g = rng.normal_vector(instance.embed_dim);
    const Eigen::VectorXd z = solution.x.transpose() * g;
    candidates.push_back(d.cwiseSqrt().cwiseProduct(z));
  }
  return best_by_rayleigh(*instance.transformation, candidates);
}

Eigen::VectorXd round_general(const SdpInstance& instance, const SdpSolution& solution,
                              double eps, std::uint64_t seed, int draws) {
  if (instance.mode != SdpMode::general) throw InputError("round_general needs a general instance");
  if (eps <= 0) eps = 0.5;
  const double log_arg =
      std::max(std::log(2.0), std::log(static_cast<double>(std::max(instance.m, 2))) +
                                  std::log(static_cast<double>(instance.n)) / (eps * eps));
  const double delta = 1.0 / (10.0 * std::sqrt(log_arg));

  Rng rng(seed);
  const Eigen::VectorXd d = degree_vector(*instance.transformation);
  const Eigen::VectorXd bias = solution.x.row(0).transpose();  // <x_v, v1>
  Eigen::MatrixXd perp = solution.x;
  perp.row(0).setZero();

  std::vector<Eigen::VectorXd> candidates;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd g = rng.normal_vector(instance.embed_dim);
    const Eigen::VectorXd noise = perp.transpose() * g;
    candidates.push_back(d.cwiseSqrt().cwiseProduct(bias + delta * noise));
    candidates.push_back(d.cwiseSqrt().cwiseProduct(bias - delta * noise));
  }
  return best_by_rayleigh(*instance.transformation, candidates);
}

SplitCheck check_positive_split(const SdpInstance& instance, const SdpSolution& solution,
                                double tolerance) {
  SplitCheck check;
  check.holds = true;
  for (int e = 0; e < instance.m; ++e) {
    for (const auto& w : instance.covers[e]) {
      const Eigen::VectorXd a = solution.x * w;
      if (a(0) > -0.5) {
        const double excess = a.squaredNorm() - 2.0 * solution.slack[e];
        check.worst_excess = std::max(check.worst_excess, excess);
        if (excess > tolerance) check.holds = false;
      }
    }
  }
  return check;
}

ApproxEigenResult approx_eigenvalue(const SubmodularTransformation& t, SdpMode mode, double eps,
                                    std::uint64_t seed) {
  ApproxEigenResult result;
  for (const auto& f : t.functions())
    result.b_squared = std::max(result.b_squared, std::pow(hausdorff_norm(f).value, 2));

  if (t.m() == 0) {
    result.z = Eigen::VectorXd::Zero(t.n());
    return result;
  }

  if (mode == SdpMode::symmetric) {
    result.instance = build_symmetric(t, eps);
    result.solution = solve(result.instance, seed);
    result.z = round_symmetric(result.instance, result.solution, seed + 1);
  } else {
    auto [scaled, factor] = scale_for_general_sdp(t);
    result.scale_factor = factor;
    result.instance = build_general(scaled, eps, factor);
    result.solution = solve(result.instance, seed);
    result.z = round_general(result.instance, result.solution, eps, seed + 1);
  }
  result.sdp_value = result.solution.objective;

  const LaplacianOperator op(t, LaplacianMode::normalized);
  result.lambda_hat = op.rayleigh(result.z);
  return result;
}

}  // namespace sublap
