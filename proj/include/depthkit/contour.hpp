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
#include <span>
#include <vector>

#include "depthkit/core.hpp"
#include "depthkit/depth.hpp"

namespace depthkit {

/// Boundary of {x : D(x) >= tau} sampled along rays from `center`. Vertex i
/// is center + lambdas[i] * directions[i]; for d = 2 the rays are ordered by
/// angle 2 pi i / n_rays.
struct ContourPolygon {
  double tau = 0.0;
  Point center;
  std::vector<Point> vertices;
  std::vector<Eigen::VectorXd> directions;
  std::vector<double> lambdas;
  DepthMethod method;
};

struct RaySample {
  double lambda = 0.0;
  double depth = 0.0;
};

struct RayProfile {
  Point center;
  Eigen::VectorXd direction;
  std::vector<RaySample> samples;
};

/// Fitted affine tail 1/depth - 1 = a + b lambda for lambda >= ell.
struct LinearTail {
  double ell_hat = 0.0;
  double a_hat = 0.0;
  double b_hat = 0.0;
  double residual = 0.0;      // max absolute deviation over the fitted suffix
  double rel_residual = 0.0;  // max relative deviation over the fitted suffix
  std::size_t start_index = 0;
};

struct RayResidual {
  Eigen::VectorXd direction;
  double residual = 0.0;  // max relative deviation from the per-ray line
};

struct SimilarityReport {
  std::optional<double> tau_star_hat;
  std::vector<RayResidual> per_ray;
  double tolerance = 0.0;
  bool pass = false;
};

struct TauStarEstimate {
  double tau_star_hat = 0.0;
  double ell_hat = 0.0;
  std::vector<LinearTail> tails;  // one per probed ray
};

/// Ray directions for tracing: angles 2 pi k / n_rays for d = 2, a seeded
/// covering set closed under sign for d >= 3, {+1, -1} for d = 1.
std::vector<Direction> contour_directions(int d, int n_rays, RngSeed seed = {});

/// Depth at `samples` equally spaced lambda in [0, lambda_max]. Raises a
/// numeric "monotonicity_violation" error when the depth increases by more
/// than 1e-9 between consecutive samples.
RayProfile ray_profile(const DepthEvaluator& depth, const Point& center, const Direction& u,
                       double lambda_max, int samples);

/// Smallest suffix of the profile on which g = 1/depth - 1 is affine in
/// lambda within `rel_tol` (relative to |g|), using least squares. The
/// suffix holds at least five samples. Raises ErrorCode::kNoLinearTail when
/// no suffix qualifies or the slope is not positive.
LinearTail detect_linear_tail(const RayProfile& profile, double rel_tol);

/// Bisection along each ray for depth = tau to absolute lambda accuracy
/// tol * spread. The bracket is opened by doubling from one data spread.
ContourPolygon trace_contour(const DepthEvaluator& depth, double tau, const Point& center,
                             int n_rays, double tol = 1e-10);
ContourPolygon trace_contour(const DepthEvaluator& depth, double tau, const Point& center,
                             std::span<const Direction> rays, double tol = 1e-10);

struct TauStarOptions {
  int n_rays = 64;
  double lambda_max_spreads = 20.0;  // lambda_max in units of the data spread
  int samples = 400;
  double rel_tol = 1e-6;
};

/// Conservative tau*: ell_hat is the largest detected tail start over the
/// probed rays, and the result is the smallest projection depth found at
/// radius ell_hat along those rays.
TauStarEstimate estimate_tau_star(const DepthEvaluator& projection, const Point& center,
                                  const TauStarOptions& options = {});
double estimate_tau_star(const Dataset& dataset, int budget, RngSeed seed, int n_rays);

/// Per ray, the points (lambda_i, 1/tau_i - 1) of at least three contours
/// must be collinear within rel_tol. Contours must share the center and ray
/// set; with a tau* estimate every tau must lie strictly below it.
SimilarityReport similarity_check(std::span<const ContourPolygon> contours, const Point& center,
                                  double rel_tol, std::optional<double> tau_star = std::nullopt);

/// Number of maximal runs of consecutive contour segments whose turning
/// angle stays below angle_tol.
int count_facets_2d(const ContourPolygon& contour, double angle_tol);

}  // namespace depthkit
