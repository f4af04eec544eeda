// Copyright 2026 The depthkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "depthkit/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "depthkit/error.hpp"

namespace depthkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-10;
constexpr int kRefactorEvery = 64;

void check_problem(const LpProblem& p, double tol) {
  const Eigen::Index m = p.objective.size();
  const Eigen::Index k = p.eq_matrix.rows();
  if (!(tol > 0.0)) throw precondition_error("bad_tolerance", "LP tolerance must be positive");
  if (p.eq_matrix.cols() != m || p.eq_rhs.size() != k || p.lower.size() != m ||
      p.upper.size() != m) {
    throw precondition_error("lp_shape", "LP dimensions are inconsistent");
  }
  if (!p.eq_matrix.allFinite() || !p.eq_rhs.allFinite() || !p.objective.allFinite() ||
      !p.lower.allFinite()) {
    throw precondition_error("lp_non_finite", "LP data must be finite (upper bounds may be +inf)");
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (std::isnan(p.upper[j]) || p.upper[j] < p.lower[j]) {
      throw precondition_error("lp_bounds", "LP bound lower > upper for variable " +
                                                std::to_string(j));
    }
  }
}

// Bounded-variable simplex on  A' q = b',  0 <= q <= cap,  with artificial
// columns appended. Values are stored for every variable; basic ones are kept
// consistent with the tableau.
class Simplex {
 public:
  Simplex(const LpProblem& p, double tol) : problem_(p), tol_(tol) {
    m_ = p.objective.size();
    k_ = p.eq_matrix.rows();
    const Eigen::Index total = m_ + k_;

    a_.setZero(k_, total);
    rhs_ = p.eq_rhs - p.eq_matrix * p.lower;
    a_.leftCols(m_) = p.eq_matrix;
    for (Eigen::Index i = 0; i < k_; ++i) {
      double scale = a_.row(i).head(m_).cwiseAbs().maxCoeff();
      scale = std::max(scale, std::abs(rhs_[i]));
      if (!(scale > 0.0)) scale = 1.0;
      double sign = rhs_[i] < 0.0 ? -1.0 : 1.0;
      a_.row(i).head(m_) *= sign / scale;
      rhs_[i] *= sign / scale;
      a_(i, m_ + i) = 1.0;
    }
    feas_tol_ = tol * std::max(1.0, k_ > 0 ? rhs_.cwiseAbs().maxCoeff() : 0.0);

    cap_.resize(total);
    for (Eigen::Index j = 0; j < m_; ++j) cap_[j] = p.upper[j] - p.lower[j];
    for (Eigen::Index j = m_; j < total; ++j) cap_[j] = kInf;

    value_.setZero(total);
    at_upper_.assign(static_cast<std::size_t>(total), false);
    basis_.resize(static_cast<std::size_t>(k_));
    basic_row_.assign(static_cast<std::size_t>(total), -1);
    for (Eigen::Index i = 0; i < k_; ++i) {
      basis_[i] = m_ + i;
      basic_row_[m_ + i] = i;
      value_[m_ + i] = rhs_[i];
    }
    tableau_ = a_;
  }

  // Phase 1. Returns true when the artificial sum reaches zero.
  bool phase_one() {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(m_ + k_);
    cost.tail(k_).setOnes();
    if (run(cost) != LpStatus::kOptimal) {
      throw numeric_error("solver_failure", "phase 1 reported unbounded");
    }
    const double infeas = value_.tail(k_).sum();
    if (infeas > feas_tol_) return false;
    // Artificials are pinned at zero from here on.
    for (Eigen::Index j = m_; j < m_ + k_; ++j) {
      cap_[j] = 0.0;
      if (basic_row_[j] < 0) {
        value_[j] = 0.0;
        at_upper_[j] = false;
      }
    }
    return true;
  }

  LpStatus phase_two() {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(m_ + k_);
    cost.head(m_) = problem_.objective;
    return run(cost);
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd q = value_.head(m_);
    for (Eigen::Index j = 0; j < m_; ++j) {
      q[j] = std::clamp(q[j], 0.0, cap_[j]);
      // Round-off snap onto the bounds.
      const double snap = 1e-12 * std::max(1.0, std::isfinite(cap_[j]) ? cap_[j] : 0.0);
      if (q[j] <= snap) q[j] = 0.0;
      else if (cap_[j] - q[j] <= snap) q[j] = cap_[j];
    }
    return problem_.lower + q;
  }

  void verify(const Eigen::VectorXd& p) const {
    // Residual relative to the magnitude of the terms in A p and b.
    const double scale = std::max(
        {1.0, k_ > 0 ? (problem_.eq_matrix.cwiseAbs() * p.cwiseAbs()).maxCoeff() : 0.0,
         problem_.eq_rhs.size() ? problem_.eq_rhs.cwiseAbs().maxCoeff() : 0.0});
    const double resid = k_ > 0 ? (problem_.eq_matrix * p - problem_.eq_rhs).cwiseAbs().maxCoeff() : 0.0;
    const double limit = 10.0 * tol_ * scale;
    if (!(resid <= limit)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", resid);
      throw numeric_error("solver_failure",
                          std::string("LP solution violates equality constraints (residual ") +
                              buf + ")");
    }
  }

 private:
  LpStatus run(const Eigen::VectorXd& cost) {
    const Eigen::Index total = m_ + k_;
    const double cost_tol = 1e-9 * std::max(1.0, cost.cwiseAbs().maxCoeff());
    const long max_iter = 20000 + 200 * static_cast<long>(total);
    int since_refactor = 0;
    for (long iter = 0; iter < max_iter; ++iter) {
      if (since_refactor >= kRefactorEvery) {
        refactor();
        since_refactor = 0;
      }
      // Reduced costs d_j = c_j - c_B^T T_j.
      Eigen::VectorXd cb(k_);
      for (Eigen::Index i = 0; i < k_; ++i) cb[i] = cost[basis_[i]];
      const Eigen::RowVectorXd reduced = cost.transpose() - cb.transpose() * tableau_;

      // Bland: smallest eligible index.
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < total; ++j) {
        if (basic_row_[j] >= 0 || cap_[j] <= 0.0) continue;
        if ((!at_upper_[j] && reduced[j] < -cost_tol) || (at_upper_[j] && reduced[j] > cost_tol)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      const double dir = at_upper_[enter] ? -1.0 : 1.0;
      double theta = cap_[enter];
      Eigen::Index leave_row = -1;
      bool leave_to_upper = false;
      for (Eigen::Index i = 0; i < k_; ++i) {
        const double t = tableau_(i, enter);
        if (std::abs(t) <= kPivotTol) continue;
        const double rate = -dir * t;
        const Eigen::Index var = basis_[i];
        double limit = kInf;
        bool to_upper = false;
        if (rate < 0.0) {
          limit = std::max(0.0, value_[var]) / -rate;
        } else if (std::isfinite(cap_[var])) {
          limit = std::max(0.0, cap_[var] - value_[var]) / rate;
          to_upper = true;
        }
        if (limit < theta - 1e-12 ||
            (leave_row >= 0 && limit <= theta + 1e-12 && var < basis_[leave_row])) {
          if (limit < theta) theta = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) return LpStatus::kUnbounded;

      for (Eigen::Index i = 0; i < k_; ++i) {
        value_[basis_[i]] += -dir * tableau_(i, enter) * theta;
      }
      value_[enter] += dir * theta;

      if (leave_row < 0) {
        // Bound flip of the entering variable.
        at_upper_[enter] = !at_upper_[enter];
        value_[enter] = at_upper_[enter] ? cap_[enter] : 0.0;
        continue;
      }
      const Eigen::Index leaving = basis_[leave_row];
      value_[leaving] = leave_to_upper ? cap_[leaving] : 0.0;
      at_upper_[leaving] = leave_to_upper;
      basic_row_[leaving] = -1;
      basis_[leave_row] = enter;
      basic_row_[enter] = leave_row;
      at_upper_[enter] = false;
      pivot(leave_row, enter);
      ++since_refactor;
    }
    throw numeric_error("solver_failure", "simplex iteration limit reached");
  }

  void pivot(Eigen::Index r, Eigen::Index col) {
    const double piv = tableau_(r, col);
    tableau_.row(r) /= piv;
    for (Eigen::Index i = 0; i < k_; ++i) {
      if (i == r) continue;
      const double f = tableau_(i, col);
      if (f != 0.0) tableau_.row(i) -= f * tableau_.row(r);
    }
  }

  // Rebuilds the tableau and basic values from the original columns.
  void refactor() {
    if (k_ == 0) return;
    Eigen::MatrixXd basis_cols(k_, k_);
    for (Eigen::Index i = 0; i < k_; ++i) basis_cols.col(i) = a_.col(basis_[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_cols);
    lu.setThreshold(1e-13);
    if (lu.rank() < k_) throw numeric_error("solver_failure", "simplex basis became singular");
    tableau_ = lu.solve(a_);
    Eigen::VectorXd r = rhs_;
    for (Eigen::Index j = 0; j < m_ + k_; ++j) {
      if (basic_row_[j] < 0 && value_[j] != 0.0) r -= a_.col(j) * value_[j];
    }
    const Eigen::VectorXd xb = lu.solve(r);
    for (Eigen::Index i = 0; i < k_; ++i) value_[basis_[i]] = xb[i];
  }

  const LpProblem& problem_;
  Eigen::Index m_ = 0;
  Eigen::Index k_ = 0;
  Eigen::MatrixXd a_;
  Eigen::VectorXd rhs_;
  Eigen::MatrixXd tableau_;
  Eigen::VectorXd cap_;
  Eigen::VectorXd value_;
  std::vector<bool> at_upper_;
  std::vector<Eigen::Index> basis_;
  std::vector<Eigen::Index> basic_row_;
  double tol_;
  double feas_tol_ = 1e-9;

 public:
  void final_refactor() { refactor(); }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, double tol) {
  check_problem(problem, tol);
  Simplex simplex(problem, tol);
  LpSolution out;
  if (!simplex.phase_one()) {
    out.status = LpStatus::kInfeasible;
    return out;
  }
  out.status = simplex.phase_two();
  if (out.status != LpStatus::kOptimal) return out;
  simplex.final_refactor();
  out.solution = simplex.solution();
  simplex.verify(out.solution);
  out.value = problem.objective.dot(out.solution);
  return out;
}

bool feasible(const LpProblem& problem, double tol) {
  check_problem(problem, tol);
  Simplex simplex(problem, tol);
  return simplex.phase_one();
}

}  // namespace depthkit
