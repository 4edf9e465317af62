#include "sublap/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "sublap/lovasz.hpp"
#include "sublap/polytope.hpp"
#include "sublap/rng.hpp"

namespace sublap {

LaplacianOperator::LaplacianOperator(const SubmodularTransformation& transformation,
                                     LaplacianMode mode)
    : transformation_(&transformation), mode_(mode) {
  const int n = transformation.n();
  inv_sqrt_degree_ = Eigen::VectorXd::Ones(n);
  if (mode_ == LaplacianMode::normalized) {
    for (int v = 0; v < n; ++v) {
      if (transformation.degree(v) <= 0)
        throw InputError("normalized Laplacian requires positive degrees");
      inv_sqrt_degree_(v) = 1.0 / std::sqrt(static_cast<double>(transformation.degree(v)));
    }
    trivial_ = inv_sqrt_degree_.cwiseInverse();  // D^{1/2} 1
    trivial_.normalize();
  } else {
    trivial_ = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  }

  double max_h2 = 0.0, sum_h2 = 0.0;
  for (const auto& f : transformation.functions()) {
    const double h = hausdorff_norm(f).value;
    max_h2 = std::max(max_h2, h * h);
    sum_h2 += h * h;
  }
  int max_degree = 0, min_degree = 1;
  for (int v = 0; v < n; ++v) max_degree = std::max(max_degree, transformation.degree(v));
  if (mode_ == LaplacianMode::normalized && n > 0)
    min_degree = *std::min_element(transformation.degrees().begin(),
                                   transformation.degrees().end());
  default_step_ = 0.01 / (max_h2 * max_degree + 1.0);
  fast_step_ = 1.0 / std::max(sum_h2 / min_degree, 1e-12);
}

Eigen::VectorXd LaplacianOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != n()) throw InputError("laplacian apply: dimension mismatch");
  const bool normalized = mode_ == LaplacianMode::normalized;
  const Eigen::VectorXd inner = normalized ? inv_sqrt_degree_.cwiseProduct(x).eval() : x;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n());
  for (const auto& f : transformation_->functions()) {
    const PolytopeVertex vertex = greedy_vertex(f, inner);
    y += vertex.w * vertex.w.dot(inner);
  }
  return normalized ? inv_sqrt_degree_.cwiseProduct(y).eval() : y;
}

double LaplacianOperator::quadratic_form(const Eigen::VectorXd& x) const {
  if (x.size() != n()) throw InputError("quadratic form: dimension mismatch");
  const bool normalized = mode_ == LaplacianMode::normalized;
  const Eigen::VectorXd inner = normalized ? inv_sqrt_degree_.cwiseProduct(x).eval() : x;
  double total = 0.0;
  for (const auto& f : transformation_->functions()) {
    const double fe = lovasz_eval(f, inner);
    total += fe * fe;
  }
  return total;
}

double LaplacianOperator::rayleigh(const Eigen::VectorXd& x) const {
  const double norm2 = x.squaredNorm();
  if (norm2 <= 0) throw InputError("rayleigh: zero vector");
  return quadratic_form(x) / norm2;
}

Eigen::VectorXd LaplacianOperator::project_out_trivial(const Eigen::VectorXd& x) const {
  return x - trivial_.dot(x) * trivial_;
}

EigenResult diffusion_eigen(const LaplacianOperator& op, const Eigen::VectorXd& x0,
                            const DiffusionOptions& options) {
  if (!op.transformation().vanishes_on_ground())
    throw InputError("diffusion_eigen requires F(V) = 0");
  const double eta = options.eta > 0 ? options.eta : op.default_step();

  Eigen::VectorXd x = op.project_out_trivial(x0);
  if (x.norm() <= 1e-14) throw InputError("diffusion_eigen: start vanishes after projection");
  x.normalize();

  EigenResult result;
  for (long step = 0; step < options.max_steps; ++step) {
    const Eigen::VectorXd y = op.apply(x);
    const double r = x.dot(y);
    const double residual = (y - r * x).norm();
    result.iterations = step;
    result.gamma = r;
    result.residual = residual;
    if (step % 100 == 0) result.rayleigh_trace.push_back(r);
    if (residual <= options.tol) {
      result.converged = true;
      break;
    }
    x -= eta * y;
    x = op.project_out_trivial(x);
    const double norm = x.norm();
    if (norm <= 1e-14) break;  // collapsed onto the trivial direction
    x /= norm;
  }
  result.z = x;
  result.rayleigh_trace.push_back(result.gamma);
  return result;
}

std::pair<double, EigenResult> reference_lambda(const LaplacianOperator& op, int restarts,
                                                std::uint64_t seed,
                                                const std::vector<Eigen::VectorXd>& witness_seeds,
                                                const DiffusionOptions& options) {
  if (restarts < 1) throw InputError("reference_lambda: need at least one restart");

  DiffusionOptions opts = options;
  if (opts.eta <= 0) opts.eta = op.fast_step();

  EigenResult best;
  bool have_best = false;
  auto consider = [&](const Eigen::VectorXd& z, const EigenResult* run) {
    const double gamma = op.rayleigh(z);
    if (!have_best || gamma < best.gamma) {
      have_best = true;
      best.gamma = gamma;
      best.z = z / z.norm();
      best.residual = (op.apply(best.z) - gamma * best.z).norm();
      best.converged = best.residual <= opts.tol;
      best.iterations = run ? run->iterations : 0;
    }
  };

  if (op.transformation().m() == 0) {
    EigenResult zero;
    zero.z = Eigen::VectorXd::Zero(op.n());
    zero.converged = true;
    zero.seed = seed;
    return {0.0, zero};
  }

  Rng rng(seed);
  std::vector<Eigen::VectorXd> starts;
  for (int i = 0; i < restarts; ++i) starts.push_back(rng.normal_vector(op.n()));
  for (const auto& w : witness_seeds) starts.push_back(w);

  for (const auto& start : starts) {
    const Eigen::VectorXd projected = op.project_out_trivial(start);
    if (projected.norm() <= 1e-12) continue;
    consider(projected, nullptr);
    const EigenResult run = diffusion_eigen(op, projected, opts);
    if (run.z.norm() > 1e-12) consider(run.z, &run);
  }
  if (!have_best) throw InputError("reference_lambda: no usable start vector");
  best.seed = seed;
  return {best.gamma, best};
}

}  // namespace sublap
