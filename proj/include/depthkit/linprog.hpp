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

#pragma once

#include <Eigen/Dense>

namespace depthkit {

/// minimize c.p  subject to  A p = b,  lower <= p <= upper.
/// `upper` entries may be +inf; `lower` entries must be finite.
struct LpProblem {
  Eigen::VectorXd objective;
  Eigen::MatrixXd eq_matrix;
  Eigen::VectorXd eq_rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  Eigen::VectorXd solution;
};

/// Dense two-phase bounded-variable primal simplex with Bland's rule.
///
/// Rows are equilibrated before solving; the pivot tolerance is 1e-10 and the
/// feasibility tolerance is `tol` scaled by the largest rhs magnitude (at
/// least 1). The basis is refactorized periodically and the final point is
/// re-verified against the original constraints; a singular basis or a
/// verification failure raises a numeric "solver_failure" error.
LpSolution solve_lp(const LpProblem& problem, double tol = 1e-9);

/// Phase 1 only: true iff the constraint set is nonempty.
bool feasible(const LpProblem& problem, double tol = 1e-9);

}  // namespace depthkit
