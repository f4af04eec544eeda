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

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "depthkit/core.hpp"
#include "depthkit/geometry.hpp"

namespace depthkit {

enum class DepthKind {
  kMahalanobis,
  kProjection,
  kHalfspace,
  kZonoid,
  kExtendedHalfspace,
  kExtendedZonoid,
};

std::string_view to_string(DepthKind kind);

/// Which depth to evaluate and, for the approximated suprema/infima, how many
/// covering directions to use. An empty budget means the default 512 d.
struct DepthMethod {
  DepthKind kind = DepthKind::kMahalanobis;
  std::optional<int> budget;
  RngSeed seed;
};

int default_budget(int d);

struct DepthResult {
  double value = 0.0;
  bool exact = false;
  int budget_used = 0;
};

/// Sample outlyingness sup_u |u.x - Med(u.X)| / MAD(u.X), approximated from
/// below for d >= 2.
///
/// Med and MAD of every covering direction are computed once. A query takes
/// the maximum ratio over the covering set, then polishes up to eight of the
/// best, mutually separated directions by golden-section search (on the angle
/// for d = 2, on 2-plane rotations through the incumbent for d >= 3). The
/// result never exceeds the true supremum. For d = 1 the value is exact.
class ProjectionOutlyingness {
 public:
  ProjectionOutlyingness(const Dataset& dataset, int budget, RngSeed seed, bool refine = true);
  /// Explicit covering set, e.g. directions mapped through an affine map.
  ProjectionOutlyingness(const Dataset& dataset, std::vector<Direction> directions,
                         bool refine = true);

  double operator()(const Point& x) const;

  struct Detail {
    double value = 0.0;
    Eigen::VectorXd argbest;  // unit direction attaining `value`
  };
  Detail evaluate(const Point& x) const;

  int budget() const noexcept { return static_cast<int>(med_.size()); }
  bool exact() const noexcept { return points_.cols() == 1; }

 private:
  void prepare(std::vector<Direction> directions);
  double ratio(const Eigen::VectorXd& u, const Point& x, std::vector<double>& scratch) const;
  void refine_2d(const Point& x, double theta, double half_width, Detail& best,
                 std::vector<double>& scratch) const;
  void refine_nd(const Point& x, Eigen::VectorXd u, double half_width, Detail& best,
                 std::vector<double>& scratch) const;

  Eigen::MatrixXd points_;
  Eigen::MatrixXd dirs_;  // budget x d
  std::vector<double> med_;
  std::vector<double> mad_;
  bool refine_ = true;
  double spacing_ = 0.0;  // angular covering radius of the direction set
};

/// Exact 2-D halfspace depth by angular sweep, O(n log n).
double halfspace_depth_2d(const Eigen::MatrixXd& points, const Point& x);

/// Evaluates one depth method against a fixed dataset, caching everything that
/// does not depend on the query (covariance factor, direction statistics,
/// hull). Extended halfspace depth needs its center (the halfspace median)
/// supplied; the extended zonoid center is the sample mean. Both centers must
/// lie strictly inside the hull.
class DepthEvaluator {
 public:
  DepthEvaluator(const Dataset& dataset, DepthMethod method,
                 std::optional<Point> center = std::nullopt);
  ~DepthEvaluator();
  DepthEvaluator(DepthEvaluator&&) noexcept;
  DepthEvaluator& operator=(DepthEvaluator&&) noexcept;

  DepthResult operator()(const Point& x) const;

  const Dataset& dataset() const noexcept;
  const DepthMethod& method() const noexcept;
  /// Center used by the extended depths; empty for the others.
  const std::optional<Point>& center() const noexcept;
  /// Built on first use for methods that need it.
  const ConvexHull& hull() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

DepthResult mahalanobis_depth(const Point& x, const Dataset& dataset);
double outlyingness(const Point& x, const Dataset& dataset, int budget, RngSeed seed);
DepthResult projection_depth(const Point& x, const Dataset& dataset, int budget, RngSeed seed);
DepthResult halfspace_depth(const Point& x, const Dataset& dataset, int budget = 0,
                            RngSeed seed = {});
DepthResult zonoid_depth(const Point& x, const Dataset& dataset);
DepthResult extended_halfspace_depth(const Point& x, const Dataset& dataset, const Point& median,
                                     int budget = 0, RngSeed seed = {});
DepthResult extended_zonoid_depth(const Point& x, const Dataset& dataset);

}  // namespace depthkit
