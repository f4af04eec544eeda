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

#include <optional>

#include "depthkit/core.hpp"
#include "depthkit/depth.hpp"
#include "depthkit/error.hpp"

namespace depthkit {

/// A depth-maximizing center. `method_tolerance` is the positional
/// uncertainty in coordinate units: the final simplex size for the
/// projection median, the Monte-Carlo standard error of the centroid for the
/// halfspace median, 0 where the answer is exact.
struct MedianResult {
  Point point;
  double attained_depth = 0.0;
  double method_tolerance = 0.0;
};

/// Raised when the projection-median search hits its iteration cap; carries
/// the best iterate found.
class MedianConvergenceError : public Error {
 public:
  MedianConvergenceError(const std::string& message, MedianResult best)
      : Error(ErrorCode::kNumeric, "median_no_convergence", message), best_(std::move(best)) {}
  const MedianResult& best() const noexcept { return best_; }

 private:
  MedianResult best_;
};

Point sample_mean(const Dataset& dataset);

/// Maximizes the budgeted projection depth by Nelder-Mead from ten starts
/// (coordinatewise median, sample mean, eight seeded perturbations). Each run
/// stops once its simplex is smaller than tol * spread. For d = 1 the answer
/// is the exact univariate median.
MedianResult projection_median(const Dataset& dataset, double tol = 1e-9, int budget = 0,
                               RngSeed seed = {});

/// Tukey median as the uniform centroid of the innermost halfspace-depth
/// region.
///
/// d = 1 is exact. For d = 2 the maximal depth is taken over the data points
/// and 10 * grid_budget jittered samples; the innermost region is then
/// located by rejection sampling in a box that is grown until it encloses
/// every hit, and its centroid is averaged from uniform samples. All sampling
/// happens in an affine frame built from the data, so the estimate is affine
/// equivariant up to rounding. If the innermost region has no interior the
/// centroid of the deepest candidates is returned with zero tolerance.
/// d >= 3 is unsupported.
MedianResult halfspace_median(const Dataset& dataset, int grid_budget = 100, RngSeed seed = {});

/// A depth evaluator bundled with the center its contours are traced from:
/// the sample mean for Mahalanobis and both zonoid variants, the projection
/// median for projection depth, the halfspace median for halfspace and
/// extended halfspace depth (sample mean for halfspace depth when d >= 3).
struct CenteredDepth {
  DepthEvaluator evaluator;
  Point center;
};

/// `center` overrides the default center; for extended halfspace depth it is
/// also the continuation center.
CenteredDepth make_centered_depth(const Dataset& dataset, const DepthMethod& method,
                                  std::optional<Point> center = std::nullopt);

}  // namespace depthkit
