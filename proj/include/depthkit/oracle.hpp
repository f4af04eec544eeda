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

#include "depthkit/core.hpp"

/// Brute-force references. None of these routes through the depth module.
namespace depthkit::oracle {

/// Exact 2-D halfspace depth by enumerating the closed halfplanes whose
/// boundary passes through x and a data point (both normals, both rotations
/// off the line), plus the normals of all data-point pairs.
double halfspace_bruteforce_2d(const Point& x, const Dataset& dataset);

/// Max of |u.x - Med| / MAD over `grid` equally spaced angles in [0, pi).
/// A lower bound on the true supremum. A direction with MAD = 0 contributes
/// +inf unless u.x equals the median there.
double projection_grid_oracle(const Point& x, const Dataset& dataset, int grid);

/// Zonoid depth by bisection on alpha in [1/n, 1] using only LP
/// feasibility of {sum p_i X_i = x, sum p_i = 1, 0 <= p_i <= 1/(n alpha)}.
/// Returns the largest alpha certified feasible, within tol of the supremum;
/// 0 outside the hull.
double zonoid_bisection_oracle(const Point& x, const Dataset& dataset, double tol = 1e-10);

}  // namespace depthkit::oracle
