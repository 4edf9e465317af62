#include "sublap/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sublap {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr long kPivotCap = 200000;

struct Tableau {
  Eigen::MatrixXd rows;       // m x (cols + 1), last column is rhs
  std::vector<int> basis;     // basic variable per row
  std::vector<bool> allowed;  // columns eligible to enter
  std::vector<bool> active;   // rows still participating
  long pivots = 0;

  int m() const { return static_cast<int>(rows.rows()); }
  int cols() const { return static_cast<int>(rows.cols()) - 1; }

  void pivot(int r, int j) {
    rows.row(r) /= rows(r, j);
    for (int i = 0; i < m(); ++i) {
      if (i == r) continue;
      const double factor = rows(i, j);
      if (factor != 0.0) rows.row(i) -= factor * rows.row(r);
    }
    basis[r] = j;
    if (++pivots > kPivotCap) throw ConvergenceError("simplex: pivot cap exceeded");
  }

  // Maximize sum_j cost[j] * x_j from the current basis. Bland's rule.
  void run(const Eigen::VectorXd& cost) {
    const int rhs = cols();
    Eigen::RowVectorXd obj = Eigen::RowVectorXd::Zero(cols() + 1);
    for (int j = 0; j < cols(); ++j) obj(j) = -cost(j);
    for (int i = 0; i < m(); ++i)
      if (active[i] && cost(basis[i]) != 0.0) obj += cost(basis[i]) * rows.row(i);

    while (true) {
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (allowed[j] && obj(j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m(); ++i) {
        if (!active[i] || rows(i, enter) <= kPivotTol) continue;
        const double ratio = rows(i, rhs) / rows(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw std::logic_error("simplex: unbounded objective");

      const double factor = obj(enter);
      pivot(leave, enter);
      obj -= factor * rows.row(leave);
    }
  }
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& a_ub, const Eigen::VectorXd& b_ub,
                  const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                  const Eigen::VectorXd& c) {
  const int n = static_cast<int>(c.size());
  const int mu = static_cast<int>(a_ub.rows());
  const int me = static_cast<int>(a_eq.rows());
  if ((mu && a_ub.cols() != n) || (me && a_eq.cols() != n))
    throw InputError("solve_lp: dimension mismatch");

  const int m = mu + me;
  const int n_slack = mu;
  const int n_art = m;  // one artificial per row keeps the setup uniform
  const int cols = n + n_slack + n_art;

  Tableau t;
  t.rows = Eigen::MatrixXd::Zero(m, cols + 1);
  t.basis.assign(m, -1);
  t.allowed.assign(cols, true);
  t.active.assign(m, true);

  for (int i = 0; i < m; ++i) {
    Eigen::RowVectorXd row(n);
    double rhs;
    if (i < mu) {
      row = a_ub.row(i);
      rhs = b_ub(i);
    } else {
      row = a_eq.row(i - mu);
      rhs = b_eq(i - mu);
    }
    double slack = (i < mu) ? 1.0 : 0.0;
    if (rhs < 0) {
      row = -row;
      rhs = -rhs;
      slack = -slack;
    }
    t.rows.block(i, 0, 1, n) = row;
    if (i < mu) t.rows(i, n + i) = slack;
    t.rows(i, n + n_slack + i) = 1.0;
    t.rows(i, cols) = rhs;
    t.basis[i] = n + n_slack + i;
  }

  // Phase 1: drive the artificials to zero.
  Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(cols);
  for (int j = n + n_slack; j < cols; ++j) cost1(j) = -1.0;
  t.run(cost1);

  double infeas = 0.0;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= n + n_slack) infeas += t.rows(i, cols);
  if (infeas > 1e-7) throw InfeasibleError("solve_lp: constraints are inconsistent");

  // Pivot leftover (zero-valued) artificials out of the basis when possible;
  // rows with no eligible entry are redundant and go inactive.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n + n_slack) continue;
    int enter = -1;
    for (int j = 0; j < n + n_slack; ++j) {
      if (std::abs(t.rows(i, j)) > 1e-7) {
        enter = j;
        break;
      }
    }
    if (enter >= 0)
      t.pivot(i, enter);
    else
      t.active[i] = false;
  }
  for (int j = n + n_slack; j < cols; ++j) t.allowed[j] = false;

  // Phase 2: the real objective.
  Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(cols);
  cost2.head(n) = c;
  t.run(cost2);

  LpResult result;
  result.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (t.active[i] && t.basis[i] < n) result.x(t.basis[i]) = t.rows(i, cols);
  result.value = c.dot(result.x);
  result.iterations = t.pivots;
  return result;
}

}  // namespace sublap
