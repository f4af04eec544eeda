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

#include "depthkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "depthkit/error.hpp"

namespace depthkit {

Direction::Direction(const Eigen::VectorXd& v) {
  if (v.size() < 1 || !v.allFinite()) {
    throw precondition_error("bad_direction", "direction must be finite and nonempty");
  }
  const double norm = v.norm();
  if (!(norm > 0.0)) {
    throw precondition_error("bad_direction", "direction must be nonzero");
  }
  u_ = v / norm;
}

Dataset::Dataset(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw precondition_error("empty_dataset", "dataset must contain at least one point");
  }
  if (!points_.allFinite()) {
    throw precondition_error("non_finite", "dataset contains non-finite coordinates");
  }
  mean_ = points_.colwise().mean().transpose();
  coordinate_scale_ = points_.cwiseAbs().maxCoeff();
  spread_ = (points_.colwise().maxCoeff() - points_.colwise().minCoeff()).maxCoeff();
  general_position_ =
      validate_general_position(points_, default_general_position_tol(*this));
}

Dataset Dataset::from_points(std::span<const Point> points) {
  if (points.empty()) {
    throw precondition_error("empty_dataset", "dataset must contain at least one point");
  }
  const Eigen::Index d = points.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) {
      throw precondition_error("dimension_mismatch",
                               "point " + std::to_string(i) + " has dimension " +
                                   std::to_string(points[i].size()) + ", expected " +
                                   std::to_string(d));
    }
    m.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  }
  return Dataset(std::move(m));
}

double default_general_position_tol(const Dataset& dataset) {
  const double scale = dataset.coordinate_scale();
  return 1e-9 * (scale > 0.0 ? scale : 1.0);
}

namespace {

// True when the subset idx[0..d] is affinely degenerate.
bool degenerate_subset(const Eigen::MatrixXd& pts, std::span<const Eigen::Index> idx,
                       double tol) {
  const Eigen::Index d = pts.cols();
  Eigen::MatrixXd diff(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    diff.row(k) = pts.row(idx[k + 1]) - pts.row(idx[0]);
  }
  std::vector<double> norms(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) norms[k] = diff.row(k).norm();
  std::sort(norms.begin(), norms.end(), std::greater<>());
  double base = 1.0;
  for (Eigen::Index k = 0; k + 1 < d; ++k) base *= norms[k];
  double det = 0.0;
  if (d == 1) {
    det = diff(0, 0);
  } else if (d == 2) {
    det = diff(0, 0) * diff(1, 1) - diff(0, 1) * diff(1, 0);
  } else {
    det = diff.partialPivLu().determinant();
  }
  return std::abs(det) <= tol * base;
}

// Number of k-subsets of n, saturating at `cap`.
double choose_capped(Eigen::Index n, Eigen::Index k, double cap) {
  double r = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (r > cap) return cap + 1.0;
  }
  return r;
}

}  // namespace

GeneralPosition validate_general_position(const Eigen::MatrixXd& points, double tol,
                                          RngSeed seed) {
  if (!(tol > 0.0)) {
    throw precondition_error("bad_tolerance", "general-position tolerance must be positive");
  }
  const Eigen::Index n = points.rows();
  const Eigen::Index d = points.cols();
  if (n < d + 1) return {false, true};

  constexpr double kMaxExhaustive = 4e6;
  const bool exhaustive = n <= 200 && choose_capped(n, d + 1, kMaxExhaustive) <= kMaxExhaustive;

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d + 1));
  if (exhaustive) {
    if (d == 1) {
      std::vector<double> v(points.data(), points.data() + n);
      std::sort(v.begin(), v.end());
      for (Eigen::Index i = 1; i < n; ++i) {
        if (v[i] - v[i - 1] <= tol) return {false, true};
      }
      return {true, true};
    }
    // Lexicographic enumeration of (d+1)-subsets.
    for (Eigen::Index k = 0; k <= d; ++k) idx[k] = k;
    while (true) {
      if (degenerate_subset(points, idx, tol)) return {false, true};
      Eigen::Index k = d;
      while (k >= 0 && idx[k] == n - (d + 1) + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (Eigen::Index j = k + 1; j <= d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return {true, true};
  }

  std::mt19937_64 rng(seed.value);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  const Eigen::Index trials = 10 * n;
  for (Eigen::Index t = 0; t < trials; ++t) {
    for (Eigen::Index k = 0; k <= d; ++k) {
      Eigen::Index candidate;
      do {
        candidate = pick(rng);
      } while (std::find(idx.begin(), idx.begin() + k, candidate) != idx.begin() + k);
      idx[k] = candidate;
    }
    if (degenerate_subset(points, idx, tol)) return {false, false};
  }
  return {true, false};
}

std::vector<Direction> random_directions(int d, int count, RngSeed seed) {
  if (d < 1 || count < 1) {
    throw precondition_error("bad_direction_request", "need d >= 1 and count >= 1");
  }
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(count));
  if (d == 1) {
    for (int k = 0; k < count; ++k) {
      out.emplace_back(Eigen::VectorXd::Constant(1, k % 2 == 0 ? 1.0 : -1.0));
    }
    return out;
  }
  if (d == 2) {
    for (int k = 0; k < count; ++k) {
      const double theta = std::numbers::pi * k / count;
      out.emplace_back(Eigen::Vector2d(std::cos(theta), std::sin(theta)));
    }
    return out;
  }
  std::mt19937_64 rng(seed.value);
  std::normal_distribution<double> gauss;
  if (d == 3) {
    // Rotation from a uniformly random unit quaternion.
    Eigen::Vector4d q;
    for (int i = 0; i < 4; ++i) q[i] = gauss(rng);
    const Eigen::Matrix3d rot =
        Eigen::Quaterniond(q[0], q[1], q[2], q[3]).normalized().toRotationMatrix();
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (k + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden_angle * k;
      const Eigen::Vector3d p(r * std::cos(phi), r * std::sin(phi), z);
      out.emplace_back(Eigen::VectorXd(rot * p));
    }
    return out;
  }
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd v(d);
    do {
      for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    } while (v.norm() < 1e-12);
    out.emplace_back(v);
  }
  return out;
}

}  // namespace depthkit
