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

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace depthkit {

/// A query or data point in R^d.
using Point = Eigen::VectorXd;

/// Seed for every randomized routine; equal seeds give equal streams.
struct RngSeed {
  std::uint64_t value = 0;
};

/// A unit vector. Construction normalizes; a zero or non-finite input throws.
class Direction {
 public:
  explicit Direction(const Eigen::VectorXd& v);

  const Eigen::VectorXd& vector() const noexcept { return u_; }
  Eigen::Index dim() const noexcept { return u_.size(); }
  double operator[](Eigen::Index i) const { return u_[i]; }

 private:
  Eigen::VectorXd u_;
};

/// Outcome of a general-position check. `exhaustive` is false when the check
/// sampled subsets, in which case `holds` only means "probably true".
struct GeneralPosition {
  bool holds = false;
  bool exhaustive = true;
};

/// Immutable n x d table of finite observations.
///
/// The general-position flag, the sample mean and the data scale are computed
/// once at construction. Datasets that fail general position are accepted and
/// flagged; the operations that need a nondegenerate scale check for it
/// themselves.
class Dataset {
 public:
  /// Rows of `points` are observations. Throws on empty input or non-finite
  /// entries.
  explicit Dataset(Eigen::MatrixXd points);

  /// Throws on dimension mismatch among the points.
  static Dataset from_points(std::span<const Point> points);

  Eigen::Index size() const noexcept { return points_.rows(); }
  Eigen::Index dim() const noexcept { return points_.cols(); }

  const Eigen::MatrixXd& points() const noexcept { return points_; }
  Point point(Eigen::Index i) const { return points_.row(i).transpose(); }

  const Point& mean() const noexcept { return mean_; }
  bool general_position() const noexcept { return general_position_.holds; }
  const GeneralPosition& general_position_info() const noexcept {
    return general_position_;
  }

  /// Largest absolute coordinate.
  double coordinate_scale() const noexcept { return coordinate_scale_; }
  /// Largest coordinate range max_i X_ij - min_i X_ij; used as the length
  /// unit for tolerances.
  double spread() const noexcept { return spread_; }

 private:
  Eigen::MatrixXd points_;
  Point mean_;
  GeneralPosition general_position_;
  double coordinate_scale_ = 0.0;
  double spread_ = 0.0;
};

/// Default general-position tolerance: 1e-9 times the coordinate scale.
double default_general_position_tol(const Dataset& dataset);

/// Checks that every (d+1)-subset spans affine dimension d. The check is
/// exhaustive for n <= 200 (and a bounded subset count); otherwise 10 n random
/// subsets are tested. A subset is degenerate when |det| of its difference
/// matrix is at most tol times the product of its d-1 longest edge vectors,
/// i.e. when its height falls below roughly tol.
GeneralPosition validate_general_position(const Eigen::MatrixXd& points,
                                          double tol, RngSeed seed = {});

/// Covering set of unit directions.
///
/// d = 1: alternating +1, -1. d = 2: angles pi k / count, k = 0..count-1 (the
/// sign is irrelevant for every depth here, so the half circle suffices).
/// d = 3: a Fibonacci lattice on the sphere, rotated by a seeded random
/// rotation. d >= 4: seeded Gaussian directions.
std::vector<Direction> random_directions(int d, int count, RngSeed seed);

}  // namespace depthkit
