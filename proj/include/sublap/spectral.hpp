#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sublap/oracle.hpp"

namespace sublap {

enum class LaplacianMode { plain, normalized };

/// The submodular Laplacian L_F(x) = sum_e w_e <w_e, x> with w_e the greedy
/// vertex of B(F_e) at x, and its degree-normalized variant
/// D^{-1/2} L_F (D^{-1/2} x). The set-valued image is resolved by the
/// deterministic greedy tie-break, picking one canonical member.
class LaplacianOperator {
 public:
  LaplacianOperator(const SubmodularTransformation& transformation, LaplacianMode mode);

  const SubmodularTransformation& transformation() const { return *transformation_; }
  LaplacianMode mode() const { return mode_; }
  int n() const { return transformation_->n(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// sum_e f_e(x')^2 with x' = x (plain) or D^{-1/2} x (normalized);
  /// equals <x, apply(x)> and does not depend on the set-valued selection.
  double quadratic_form(const Eigen::VectorXd& x) const;
  double rayleigh(const Eigen::VectorXd& x) const;

  /// Unit vector spanning the kernel direction: 1/sqrt(n) (plain) or
  /// D^{1/2} 1 normalized (normalized mode).
  const Eigen::VectorXd& trivial_direction() const { return trivial_; }
  /// x minus its component along the trivial direction.
  Eigen::VectorXd project_out_trivial(const Eigen::VectorXd& x) const;

  /// Conservative explicit-Euler step 0.01 / (max_e ||B(F_e)||_H^2 * max_v d + 1).
  double default_step() const { return default_step_; }
  /// Larger step 1 / (sum_e ||B(F_e)||_H^2 / d_min), still stable for the
  /// piecewise-linear operator; used by multi-restart search.
  double fast_step() const { return fast_step_; }

 private:
  const SubmodularTransformation* transformation_;
  LaplacianMode mode_;
  Eigen::VectorXd inv_sqrt_degree_;
  Eigen::VectorXd trivial_;
  double default_step_ = 0.0;
  double fast_step_ = 0.0;
};

struct EigenResult {
  double gamma = 0.0;
  Eigen::VectorXd z;
  double residual = 0.0;
  std::vector<double> rayleigh_trace;  // sampled along the trajectory
  long iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
};

struct DiffusionOptions {
  double eta = 0.0;  // <= 0 selects the operator's conservative default
  long max_steps = 1000000;
  double tol = 1e-8;
};

/// Discretized diffusion dx/dt in -L_F(x): explicit Euler with projection
/// onto the trivial-direction complement and renormalization each step.
/// Terminates when ||apply(x) - R(x) x|| <= tol. Requires F(V) = 0.
EigenResult diffusion_eigen(const LaplacianOperator& op, const Eigen::VectorXd& x0,
                            const DiffusionOptions& options = {});

/// Minimum Rayleigh value observed over diffusion runs from `restarts`
/// random seeds plus the supplied witness vectors; the returned result wraps
/// the argmin vector, so gamma = rayleigh(z) <= rayleigh(w) for every
/// witness w. An upper bound on the smallest non-trivial eigenvalue.
std::pair<double, EigenResult> reference_lambda(
    const LaplacianOperator& op, int restarts, std::uint64_t seed,
    const std::vector<Eigen::VectorXd>& witness_seeds = {}, const DiffusionOptions& options = {});

}  // namespace sublap
