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

#include <vector>

#include "depthkit/core.hpp"

namespace depthkit {

/// Counter-clockwise, strictly convex hull polygon; vertices are data points.
struct HullPolygon2D {
  std::vector<Point> vertices;
  std::vector<Eigen::Index> indices;  // rows of the source dataset
};

/// Exit of a ray from the hull: boundary_point = center + lambda_boundary * u.
struct RayHit {
  double lambda_boundary = 0.0;
  Point boundary_point;
};

/// Andrew's monotone chain. Requires d = 2; collinear boundary points are
/// dropped so consecutive cross products are strictly positive.
HullPolygon2D convex_hull_2d(const Dataset& dataset);

/// Convex hull of a dataset, prepared for repeated membership and ray
/// queries. d = 1 is an interval, d = 2 a polygon; d >= 3 answers every query
/// with a linear program over the data points.
///
/// Membership tolerances are relative to the hull diameter: a point within
/// tol * diameter of the hull counts as inside, so the boundary is closed.
class ConvexHull {
 public:
  static constexpr double kDefaultTol = 1e-9;

  explicit ConvexHull(const Dataset& dataset);

  Eigen::Index dim() const noexcept { return points_.cols(); }
  double diameter() const noexcept { return diameter_; }
  /// Only meaningful for d = 2.
  const HullPolygon2D& polygon() const noexcept { return polygon_; }

  bool contains(const Point& x, double tol = kDefaultTol) const;
  /// True when x is at least tol * diameter away from the boundary.
  bool strictly_inside(const Point& x, double tol = kDefaultTol) const;

  /// Exit distance along `u` from an interior `center`. Throws a precondition
  /// error when the center is outside or on the boundary.
  RayHit ray_exit(const Point& center, const Direction& u) const;

 private:
  double exit_distance(const Point& center, const Eigen::VectorXd& u) const;
  double polygon_margin(const Point& x) const;

  Eigen::MatrixXd points_;
  HullPolygon2D polygon_;
  // Outward unit normals and offsets of the polygon edges: n.y <= offset.
  std::vector<Eigen::Vector2d> normals_;
  std::vector<double> offsets_;
  double lo_ = 0.0, hi_ = 0.0;  // d = 1 interval
  double diameter_ = 0.0;
};

/// True iff x is a convex combination of the data points (boundary included).
/// d = 2 uses the polygon, d >= 3 an LP feasibility test.
bool contains_point(const Dataset& dataset, const Point& x,
                    double tol = ConvexHull::kDefaultTol);

/// LP membership test for any d; the independent route for cross-checks.
bool contains_point_lp(const Dataset& dataset, const Point& x,
                       double tol = ConvexHull::kDefaultTol);

RayHit ray_boundary_intersection(const Dataset& dataset, const Point& center,
                                 const Direction& u);

/// LP exit distance for any d: max t s.t. center + t u = sum p_i X_i,
/// sum p_i = 1, p >= 0.
double ray_exit_lp(const Dataset& dataset, const Point& center, const Direction& u);

}  // namespace depthkit
