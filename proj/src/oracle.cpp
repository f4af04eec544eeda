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

#include "depthkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "depthkit/error.hpp"
#include "depthkit/linprog.hpp"
#include "parallel.hpp"

namespace depthkit::oracle {
namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

double halfspace_bruteforce_2d(const Point& x, const Dataset& dataset) {
  if (dataset.dim() != 2 || x.size() != 2)
    throw precondition_error("unsupported_dimension", "brute-force halfspace oracle is 2-D");
  const Eigen::Index n = dataset.size();
  std::vector<Eigen::Vector2d> r(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    r[i] = Eigen::Vector2d(dataset.points()(i, 0) - x[0], dataset.points()(i, 1) - x[1]);

  // Closed count for normal u: points with u.r <= 0. `v` runs along the
  // boundary line; with side = +-1 the normal is tilted towards side * v, so
  // points on the line count only when side * (v.r) <= 0.
  auto count = [&](const Eigen::Vector2d& u, const Eigen::Vector2d& v, int side) {
    Eigen::Index c = 0;
    for (const auto& p : r) {
      const double s = u.dot(p);
      if (s < 0.0) ++c;
      else if (s == 0.0 && side * v.dot(p) <= 0.0) ++c;
    }
    return c;
  };
  // For lines through x the on-line test is exact: u.p == 0 iff cross(v, p) == 0.
  auto count_through_x = [&](const Eigen::Vector2d& v, double sign, int side) {
    Eigen::Index c = 0;
    for (const auto& p : r) {
      const double s = sign * cross(v, p);
      if (s < 0.0) ++c;
      else if (s == 0.0 && (side == 0 || side * v.dot(p) <= 0.0)) ++c;
    }
    return c;
  };

  Eigen::Index best = count(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0), 0);
  for (const auto& v : r) {
    if (v.x() == 0.0 && v.y() == 0.0) continue;
    for (double sign : {1.0, -1.0})
      for (int side : {-1, 0, 1}) best = std::min(best, count_through_x(v, sign, side));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::Vector2d v = r[j] - r[i];
      if (v.x() == 0.0 && v.y() == 0.0) continue;
      const Eigen::Vector2d u(-v.y(), v.x());
      best = std::min(best, count(u, v, 0));
      best = std::min(best, count(-u, v, 0));
    }
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

double projection_grid_oracle(const Point& x, const Dataset& dataset, int grid) {
  if (dataset.dim() != 2 || x.size() != 2)
    throw precondition_error("unsupported_dimension", "projection grid oracle is 2-D");
  if (grid < 1) throw precondition_error("invalid_argument", "grid must be positive");
  const auto& X = dataset.points();
  const std::size_t n = static_cast<std::size_t>(X.rows());
  // Plain full sorts; Med is the mean of the two middle order statistics.
  auto med = [n](std::vector<double>& z) {
    std::sort(z.begin(), z.end());
    return 0.5 * (z[(n + 1) / 2 - 1] + z[(n + 2) / 2 - 1]);
  };
  const unsigned blocks = std::max(1u, detail::worker_count()) * 4;
  std::vector<double> block_max(blocks, 0.0);
  detail::parallel_for(blocks, [&](std::size_t b) {
    std::vector<double> z(n), dev(n);
    double m = 0.0;
    for (int k = static_cast<int>(b); k < grid; k += static_cast<int>(blocks)) {
      const double a = std::numbers::pi * k / grid;
      const double c = std::cos(a), s = std::sin(a);
      for (std::size_t i = 0; i < n; ++i)
        z[i] = c * X(static_cast<Eigen::Index>(i), 0) + s * X(static_cast<Eigen::Index>(i), 1);
      const double md = med(z);
      for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(z[i] - md);
      const double mad = med(dev);
      const double num = std::abs(c * x[0] + s * x[1] - md);
      double ratio;
      if (mad > 0.0) ratio = num / mad;
      else ratio = num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      m = std::max(m, ratio);
    }
    block_max[b] = m;
  });
  return *std::max_element(block_max.begin(), block_max.end());
}

double zonoid_bisection_oracle(const Point& x, const Dataset& dataset, double tol) {
  const Eigen::Index n = dataset.size(), d = dataset.dim();
  if (x.size() != d) throw precondition_error("dimension_mismatch", "query has the wrong dimension");
  if (!(tol > 0.0)) throw precondition_error("invalid_argument", "tol must be positive");
  LpProblem lp;
  lp.objective = Eigen::VectorXd::Zero(n);
  lp.eq_matrix.resize(d + 1, n);
  lp.eq_matrix.topRows(d) = dataset.points().transpose();
  lp.eq_matrix.row(d).setOnes();
  lp.eq_rhs.resize(d + 1);
  lp.eq_rhs.head(d) = x;
  lp.eq_rhs[d] = 1.0;
  lp.lower = Eigen::VectorXd::Zero(n);
  auto ok = [&](double alpha) {
    lp.upper = Eigen::VectorXd::Constant(n, 1.0 / (static_cast<double>(n) * alpha));
    return feasible(lp);
  };
  double lo = 1.0 / static_cast<double>(n), hi = 1.0;
  if (!ok(lo)) return 0.0;
  if (ok(hi)) return 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace depthkit::oracle
