#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "sublap/lovasz.hpp"
#include "sublap/oracle.hpp"

namespace sublap {

/// A base polytope B(F - p), optionally intersected with an l1 ball
/// {w : ||w - center||_1 <= r}. All vectors live in support coordinates
/// (dimension = |support| of the oracle).
class PolytopeHandle {
 public:
  explicit PolytopeHandle(SubmodularOracle oracle);
  PolytopeHandle(SubmodularOracle oracle, Eigen::VectorXd translation, double l1_radius,
                 Eigen::VectorXd ball_center);

  const SubmodularOracle& oracle() const { return oracle_; }
  int dim() const { return oracle_.support_size(); }
  bool has_ball() const { return radius_.has_value(); }
  double radius() const { return *radius_; }
  const Eigen::VectorXd& translation() const { return translation_; }
  const Eigen::VectorXd& ball_center() const { return center_; }

  /// (F - p)(S) for a local support mask.
  double constraint_value(Subset local_mask) const;

 private:
  SubmodularOracle oracle_;
  Eigen::VectorXd translation_;
  std::optional<double> radius_;
  Eigen::VectorXd center_;
};

struct MembershipReport {
  bool member = false;
  double worst_violation = 0.0;  // largest constraint excess (<= tol when member)
  Subset worst_set = 0;          // local mask of the worst subset constraint
  bool l1_violated = false;
  explicit operator bool() const { return member; }
};

/// Scans all 2^dim subset constraints, the sum equality, and the optional
/// l1 bound, each at tolerance 1e-9 (dim capped at 16).
MembershipReport membership(const PolytopeHandle& handle, const Eigen::VectorXd& w,
                            double tolerance = 1e-9);

struct LinearOptResult {
  Eigen::VectorXd w;
  double value = 0.0;
  long iterations = 0;
};

/// Maximizes <c, w> over the handle. Plain base polytopes use the greedy
/// vertex; l1-intersections solve an explicit LP (dim capped at 12).
LinearOptResult linear_optimize(const PolytopeHandle& handle, const Eigen::VectorXd& c);

struct WolfeResult {
  Eigen::VectorXd w;
  double squared_norm = 0.0;
  long iterations = 0;
  bool converged = false;
};

/// Convergence failure carrying the best iterate found.
class WolfeConvergenceError : public ConvergenceError {
 public:
  WolfeConvergenceError(const std::string& what, WolfeResult best)
      : ConvergenceError(what), best_iterate(std::move(best)) {}
  WolfeResult best_iterate;
};

/// Wolfe's minimum-norm-point algorithm (major/minor cycles, affine
/// minimizer). Guarantee: ||w*||^2 <= min over the polytope + 2 eps^2.
WolfeResult wolfe_min_norm(const PolytopeHandle& handle, double eps, long iteration_cap = 10000);

enum class CoverProvenance { l1_ball, algorithm1, multiscale };

struct CoverSet {
  int dim = 0;
  double radius = 0.0;  // certified absolute l2 radius
  CoverProvenance provenance = CoverProvenance::l1_ball;
  std::vector<Eigen::VectorXd> points;
  long skipped = 0;  // cover points dropped due to solver non-convergence

  std::size_t size() const { return points.size(); }
};

/// Deterministic Maurey cover of the unit l1 ball: all lattice points a/K
/// with integral a, ||a||_1 <= K, K = ceil(1/eps^2). An eps-cover in l2.
CoverSet l1_ball_cover(int n, double eps);

/// Covers B(F) intersected with the l1 ball of radius r to absolute l2
/// radius eps: for each point p of an (eps/3)-cover of r B_1, run Wolfe on
/// B(F - p) shifted into the ball and accept p + w_p when ||w_p||_2 <= 2eps/3.
CoverSet cover_base_polytope_at_scale(const SubmodularOracle& oracle, double r, double eps);

/// Multiscale cover of B(F) with certified radius eps * ||B(F)||_H, built
/// from per-scale covers at radii r_i = 2^i * max_v F({v}).
CoverSet cover_base_polytope(const SubmodularOracle& oracle, double eps);

struct HausdorffNorm {
  double value = 0.0;
  bool is_bound = false;  // true when the 2||F||_inf fallback was used
};

/// max ||w||_2 over B(F): exact via vertex enumeration for supports up to 8,
/// otherwise the Lemma 5.1 bound 2||F||_inf flagged as a bound.
HausdorffNorm hausdorff_norm(const SubmodularOracle& oracle);

}  // namespace sublap
