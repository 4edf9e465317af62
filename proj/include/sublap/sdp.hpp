#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sublap/oracle.hpp"

namespace sublap {

enum class SdpMode { symmetric, general };

/// Vector-program relaxation of the smallest non-trivial eigenvalue.
/// Per-vertex vectors x_v in R^N (N = n + 4) minimize the worst inner
/// product against a finite cover C_e of each base polytope, subject to
/// sum_v d(v) ||x_v||^2 = 1 and sum_v d(v) x_v = 0. The general mode adds
/// the bias direction v_1 (first coordinate) with auxiliary vectors that
/// are eliminated in closed form by the solver.
struct SdpInstance {
  SdpMode mode = SdpMode::symmetric;
  std::shared_ptr<const SubmodularTransformation> transformation;  // scaled copy in general mode
  int n = 0;
  int m = 0;
  int embed_dim = 0;  // N
  double eps = 0.0;   // cover accuracy; 0 means explicit vertex mode
  bool vertex_mode = true;
  double scale_factor = 1.0;  // original values = stored values * factor
  std::vector<std::vector<Eigen::VectorXd>> covers;  // ground-dense points per function
};

/// Symmetric relaxation. eps <= 0 selects explicit extreme points
/// (supports up to 8); otherwise multiscale covers at accuracy eps.
SdpInstance build_symmetric(const SubmodularTransformation& transformation, double eps);

/// General relaxation; the input must already be scaled into [0, 1/100]
/// (see scale_for_general_sdp), with the restoring factor passed through.
SdpInstance build_general(const SubmodularTransformation& scaled, double eps,
                          double scale_factor);

struct SdpSolution {
  Eigen::MatrixXd x;           // embed_dim x n, column v holds x_v
  std::vector<double> slack;   // per-function tight slack value ||eta_e||^2
  double objective = 0.0;
  double max_residual = 0.0;   // degree-constraint residual after polish
  long iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
};

/// Low-rank projected-subgradient solver. Deterministic given the seed.
/// A warm-start vector z (with sum d z^2 = 1, sum d z = 0) seeds a rank-1
/// embedding; without one, a short diffusion run supplies it. The returned
/// iterate is exactly feasible and its objective is the best observed.
SdpSolution solve(const SdpInstance& instance, std::uint64_t seed,
                  long max_iterations = 400,
                  const std::optional<Eigen::VectorXd>& warm_z = std::nullopt);

/// Gaussian hyperplane rounding: z(v) = <x_v, g>, returned as D^{1/2} z,
/// best of `draws` by Rayleigh quotient.
Eigen::VectorXd round_symmetric(const SdpInstance& instance, const SdpSolution& solution,
                                std::uint64_t seed, int draws = 16);

/// Biased rounding z_pm(v) = <x_v, v_1> +- delta <P x_v, g> with
/// delta = 1/(10 sqrt(log(max(m,2) n^{1/eps^2}))), best of `draws`.
Eigen::VectorXd round_general(const SdpInstance& instance, const SdpSolution& solution,
                              double eps, std::uint64_t seed, int draws = 16);

struct SplitCheck {
  bool holds = false;
  double worst_excess = 0.0;  // max over e, w of ||Xw||^2 - 2 ||eta_e||^2
};

/// For cover points with <Xw, v_1> > -1/2, checks ||Xw||^2 <= 2 ||eta_e||^2
/// at the given tolerance (a consequence of the general-mode constraints).
SplitCheck check_positive_split(const SdpInstance& instance, const SdpSolution& solution,
                                double tolerance = 1e-6);

struct ApproxEigenResult {
  double lambda_hat = 0.0;  // Rayleigh quotient of z in the original input
  Eigen::VectorXd z;
  double sdp_value = 0.0;   // relaxation objective (scaled world in general mode)
  double b_squared = 0.0;   // max_e ||B(F_e)||_H^2 of the original input
  double scale_factor = 1.0;
  SdpSolution solution;
  SdpInstance instance;
};

/// Full pipeline: build (vertex mode when eps <= 0), solve, round.
ApproxEigenResult approx_eigenvalue(const SubmodularTransformation& transformation, SdpMode mode,
                                    double eps, std::uint64_t seed);

}  // namespace sublap
