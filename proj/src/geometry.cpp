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

#include "depthkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "depthkit/error.hpp"
#include "depthkit/linprog.hpp"

namespace depthkit {

namespace {

double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

void require_dim(const Dataset& dataset, const Point& x) {
  if (x.size() != dataset.dim()) {
    throw precondition_error("dimension_mismatch", "query dimension does not match the dataset");
  }
}

// Rows: sum_i p_i (X_i - x) - t u = 0 (d rows), sum_i p_i = 1.
LpProblem hull_lp(const Eigen::MatrixXd& pts, const Point& x, const Eigen::VectorXd* u) {
  const Eigen::Index n = pts.rows();
  const Eigen::Index d = pts.cols();
  const Eigen::Index m = n + (u ? 1 : 0);
  LpProblem lp;
  lp.objective = Eigen::VectorXd::Zero(m);
  lp.eq_matrix = Eigen::MatrixXd::Zero(d + 1, m);
  lp.eq_matrix.topLeftCorner(d, n) = (pts.rowwise() - x.transpose()).transpose();
  lp.eq_matrix.row(d).head(n).setOnes();
  lp.eq_rhs = Eigen::VectorXd::Zero(d + 1);
  lp.eq_rhs[d] = 1.0;
  lp.lower = Eigen::VectorXd::Zero(m);
  lp.upper = Eigen::VectorXd::Ones(m);
  if (u) {
    lp.eq_matrix.col(n).head(d) = -*u;
    lp.upper[n] = std::numeric_limits<double>::infinity();
    lp.objective[n] = -1.0;
  }
  return lp;
}

double pairwise_diameter(const Eigen::MatrixXd& pts) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < pts.rows(); ++j) {
      best = std::max(best, (pts.row(i) - pts.row(j)).squaredNorm());
    }
  }
  return std::sqrt(best);
}

double lp_exit(const Eigen::MatrixXd& pts, const Point& center, const Eigen::VectorXd& u) {
  const LpSolution sol = solve_lp(hull_lp(pts, center, &u), 1e-10);
  if (sol.status == LpStatus::kInfeasible) {
    throw precondition_error("center_outside_hull", "ray center lies outside the convex hull");
  }
  if (sol.status != LpStatus::kOptimal) {
    throw numeric_error("solver_failure", "hull exit LP is unbounded");
  }
  return -sol.value;
}

}  // namespace

HullPolygon2D convex_hull_2d(const Dataset& dataset) {
  if (dataset.dim() != 2) {
    throw precondition_error("dimension", "convex_hull_2d requires two-dimensional data");
  }
  const Eigen::Index n = dataset.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto& pts = dataset.points();
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (pts(a, 0) != pts(b, 0)) return pts(a, 0) < pts(b, 0);
    return pts(a, 1) < pts(b, 1);
  });
  auto at = [&](Eigen::Index i) { return Eigen::Vector2d(pts(i, 0), pts(i, 1)); };

  std::vector<Eigen::Index> chain(2 * order.size());
  std::size_t k = 0;
  for (Eigen::Index i : order) {
    while (k >= 2 && cross(at(chain[k - 2]), at(chain[k - 1]), at(i)) <= 0.0) --k;
    chain[k++] = i;
  }
  const std::size_t lower_size = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (k >= lower_size && cross(at(chain[k - 2]), at(chain[k - 1]), at(*it)) <= 0.0) --k;
    chain[k++] = *it;
  }
  chain.resize(k > 1 ? k - 1 : k);

  HullPolygon2D hull;
  for (Eigen::Index i : chain) {
    if (!hull.indices.empty() && at(hull.indices.back()) == at(i)) continue;
    hull.indices.push_back(i);
    hull.vertices.emplace_back(at(i));
  }
  return hull;
}

ConvexHull::ConvexHull(const Dataset& dataset) : points_(dataset.points()) {
  const Eigen::Index d = dataset.dim();
  if (d == 1) {
    lo_ = points_.col(0).minCoeff();
    hi_ = points_.col(0).maxCoeff();
    diameter_ = hi_ - lo_;
  } else if (d == 2) {
    polygon_ = convex_hull_2d(dataset);
    const std::size_t h = polygon_.vertices.size();
    Eigen::MatrixXd verts(static_cast<Eigen::Index>(h), 2);
    for (std::size_t i = 0; i < h; ++i) verts.row(static_cast<Eigen::Index>(i)) = polygon_.vertices[i].transpose();
    diameter_ = pairwise_diameter(verts);
    if (h >= 3) {
      for (std::size_t i = 0; i < h; ++i) {
        const Eigen::Vector2d a = polygon_.vertices[i];
        const Eigen::Vector2d b = polygon_.vertices[(i + 1) % h];
        const Eigen::Vector2d e = b - a;
        const Eigen::Vector2d normal = Eigen::Vector2d(e.y(), -e.x()).normalized();
        normals_.push_back(normal);
        offsets_.push_back(normal.dot(a));
      }
    }
  } else {
    diameter_ = pairwise_diameter(points_);
  }
}

// Signed distance from x to the polygon boundary; positive inside.
double ConvexHull::polygon_margin(const Point& x) const {
  const Eigen::Vector2d y(x[0], x[1]);
  if (normals_.empty()) {
    // Degenerate hull: a point or a segment. Negative distance to it.
    const auto& v = polygon_.vertices;
    if (v.size() == 1) return -(y - Eigen::Vector2d(v[0])).norm();
    const Eigen::Vector2d a = v[0], b = v[1];
    const double t = std::clamp((y - a).dot(b - a) / (b - a).squaredNorm(), 0.0, 1.0);
    return -(y - (a + t * (b - a))).norm();
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    margin = std::min(margin, offsets_[i] - normals_[i].dot(y));
  }
  return margin;
}

bool ConvexHull::contains(const Point& x, double tol) const {
  if (x.size() != dim()) {
    throw precondition_error("dimension_mismatch", "query dimension does not match the hull");
  }
  const double slack = tol * diameter_;
  if (dim() == 1) return x[0] >= lo_ - slack && x[0] <= hi_ + slack;
  if (dim() == 2) return polygon_margin(x) >= -slack;
  return feasible(hull_lp(points_, x, nullptr), tol);
}

bool ConvexHull::strictly_inside(const Point& x, double tol) const {
  if (x.size() != dim()) {
    throw precondition_error("dimension_mismatch", "query dimension does not match the hull");
  }
  const double slack = tol * diameter_;
  if (dim() == 1) return x[0] > lo_ + slack && x[0] < hi_ - slack;
  if (dim() == 2) return polygon_margin(x) > slack;
  if (!contains(x, tol)) return false;
  // A boundary point has zero exit distance along one of +-e_k.
  for (Eigen::Index k = 0; k < dim(); ++k) {
    for (double s : {1.0, -1.0}) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
      e[k] = s;
      if (!(lp_exit(points_, x, e) > slack)) return false;
    }
  }
  return true;
}

double ConvexHull::exit_distance(const Point& center, const Eigen::VectorXd& u) const {
  if (dim() == 1) return u[0] > 0.0 ? hi_ - center[0] : center[0] - lo_;
  if (dim() == 2) {
    double t = std::numeric_limits<double>::infinity();
    const Eigen::Vector2d c(center[0], center[1]);
    const Eigen::Vector2d v(u[0], u[1]);
    for (std::size_t i = 0; i < normals_.size(); ++i) {
      const double rate = normals_[i].dot(v);
      if (rate > 0.0) t = std::min(t, (offsets_[i] - normals_[i].dot(c)) / rate);
    }
    return t;
  }
  return lp_exit(points_, center, u);
}

RayHit ConvexHull::ray_exit(const Point& center, const Direction& u) const {
  if (u.dim() != dim()) {
    throw precondition_error("dimension_mismatch", "direction dimension does not match the hull");
  }
  if (!strictly_inside(center)) {
    throw precondition_error("center_not_interior",
                             "ray center must lie strictly inside the convex hull");
  }
  RayHit hit;
  hit.lambda_boundary = exit_distance(center, u.vector());
  if (!std::isfinite(hit.lambda_boundary) || hit.lambda_boundary <= 0.0) {
    throw numeric_error("ray_exit", "ray exit distance is not a positive finite number");
  }
  hit.boundary_point = center + hit.lambda_boundary * u.vector();
  return hit;
}

bool contains_point(const Dataset& dataset, const Point& x, double tol) {
  require_dim(dataset, x);
  return ConvexHull(dataset).contains(x, tol);
}

bool contains_point_lp(const Dataset& dataset, const Point& x, double tol) {
  require_dim(dataset, x);
  return feasible(hull_lp(dataset.points(), x, nullptr), tol);
}

RayHit ray_boundary_intersection(const Dataset& dataset, const Point& center, const Direction& u) {
  require_dim(dataset, center);
  return ConvexHull(dataset).ray_exit(center, u);
}

double ray_exit_lp(const Dataset& dataset, const Point& center, const Direction& u) {
  require_dim(dataset, center);
  return lp_exit(dataset.points(), center, u.vector());
}

}  // namespace depthkit
