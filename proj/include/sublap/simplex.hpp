#pragma once

#include <Eigen/Dense>

#include "sublap/errors.hpp"

namespace sublap {

struct LpResult {
  Eigen::VectorXd x;
  double value = 0.0;
  long iterations = 0;
};

/// Maximize c.x subject to a_ub x <= b_ub, a_eq x = b_eq, x >= 0.
/// Dense two-phase tableau simplex with Bland's rule (always terminates).
/// Throws InfeasibleError when the constraints are inconsistent and
/// ConvergenceError on the pivot cap. Unbounded problems indicate caller
/// bugs here (all uses are over polytopes) and raise logic_error.
LpResult solve_lp(const Eigen::MatrixXd& a_ub, const Eigen::VectorXd& b_ub,
                  const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                  const Eigen::VectorXd& c);

}  // namespace sublap
