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

#include "depthkit/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "depthkit/error.hpp"
#include "depthkit/median.hpp"
#include "parallel.hpp"

namespace depthkit {
namespace {

double length_unit(const Dataset& ds) { return ds.spread() > 0.0 ? ds.spread() : 1.0; }

struct LineFit {
  double a = 0.0;
  double b = 0.0;
};

// Least-squares line through (x_i, y_i).
LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.b = sxx > 0.0 ? sxy / sxx : 0.0;
  f.a = my - f.b * mx;
  return f;
}

struct Deviation {
  double abs = 0.0;
  double rel = 0.0;
};

// Relative deviations use |y_i| floored at 1e-9 of the largest |y| so a
// sample with g = 0 on an exact line does not divide by zero.
Deviation deviation(std::span<const double> x, std::span<const double> y, const LineFit& f) {
  double ymax = 0.0;
  for (double v : y) ymax = std::max(ymax, std::abs(v));
  const double floor = std::max(1e-9 * ymax, 1e-300);
  Deviation d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::abs(y[i] - (f.a + f.b * x[i]));
    d.abs = std::max(d.abs, r);
    d.rel = std::max(d.rel, r / std::max(std::abs(y[i]), floor));
  }
  return d;
}

double depth_at(const DepthEvaluator& depth, const Point& center, const Eigen::VectorXd& u,
                double lambda) {
  return depth(Point(center + lambda * u)).value;
}

}  // namespace

std::vector<Direction> contour_directions(int d, int n_rays, RngSeed seed) {
  if (n_rays < 1) throw precondition_error("invalid_argument", "n_rays must be positive");
  std::vector<Direction> out;
  if (d == 1) {
    out.emplace_back(Eigen::VectorXd::Constant(1, 1.0));
    out.emplace_back(Eigen::VectorXd::Constant(1, -1.0));
    return out;
  }
  if (d == 2) {
    if (n_rays < 3) throw precondition_error("invalid_argument", "n_rays must be at least 3");
    for (int k = 0; k < n_rays; ++k) {
      const double a = 2.0 * std::numbers::pi * k / n_rays;
      out.emplace_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    return out;
  }
  const int half = (n_rays + 1) / 2;
  auto base = random_directions(d, half, seed);
  for (const auto& u : base) out.push_back(u);
  for (const auto& u : base) {
    if (static_cast<int>(out.size()) == n_rays) break;
    out.emplace_back(Eigen::VectorXd(-u.vector()));
  }
  return out;
}

RayProfile ray_profile(const DepthEvaluator& depth, const Point& center, const Direction& u,
                       double lambda_max, int samples) {
  if (samples < 2) throw precondition_error("invalid_argument", "profile needs at least 2 samples");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
    throw precondition_error("invalid_argument", "lambda_max must be positive and finite");
  if (u.dim() != center.size())
    throw precondition_error("dimension_mismatch", "direction and center differ in dimension");
  RayProfile p;
  p.center = center;
  p.direction = u.vector();
  p.samples.resize(static_cast<std::size_t>(samples));
  detail::parallel_for(p.samples.size(), [&](std::size_t i) {
    const double lambda = lambda_max * static_cast<double>(i) / (samples - 1);
    p.samples[i] = {lambda, depth_at(depth, center, p.direction, lambda)};
  });
  for (std::size_t i = 1; i < p.samples.size(); ++i) {
    if (p.samples[i].depth > p.samples[i - 1].depth + 1e-9) {
      throw numeric_error("monotonicity_violation",
                          "depth increases along the ray at lambda = " +
                              std::to_string(p.samples[i].lambda));
    }
  }
  return p;
}

LinearTail detect_linear_tail(const RayProfile& profile, double rel_tol) {
  constexpr std::size_t kMinTail = 5;
  const std::size_t n = profile.samples.size();
  if (n < kMinTail) throw Error(ErrorCode::kNoLinearTail, "no_linear_tail", "profile too short");
  std::vector<double> lam(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dv = profile.samples[i].depth;
    if (!(dv > 0.0)) {
      throw Error(ErrorCode::kNoLinearTail, "no_linear_tail",
                  "depth vanishes along the ray before lambda_max");
    }
    lam[i] = profile.samples[i].lambda;
    g[i] = 1.0 / dv - 1.0;
  }
  for (std::size_t j = 0; j + kMinTail <= n; ++j) {
    std::span<const double> x(lam.data() + j, n - j), y(g.data() + j, n - j);
    const LineFit f = fit_line(x, y);
    const Deviation dev = deviation(x, y, f);
    if (dev.rel <= rel_tol) {
      if (!(f.b > 0.0)) break;
      LinearTail t;
      t.ell_hat = lam[j];
      t.a_hat = f.a;
      t.b_hat = f.b;
      t.residual = dev.abs;
      t.rel_residual = dev.rel;
      t.start_index = j;
      return t;
    }
  }
  throw Error(ErrorCode::kNoLinearTail, "no_linear_tail",
              "no affine tail of 1/depth - 1 within tolerance before lambda_max");
}

ContourPolygon trace_contour(const DepthEvaluator& depth, double tau, const Point& center,
                             int n_rays, double tol) {
  const auto rays = contour_directions(static_cast<int>(center.size()), n_rays,
                                       depth.method().seed);
  return trace_contour(depth, tau, center, std::span<const Direction>(rays), tol);
}

ContourPolygon trace_contour(const DepthEvaluator& depth, double tau, const Point& center,
                             std::span<const Direction> rays, double tol) {
  const Dataset& ds = depth.dataset();
  if (center.size() != ds.dim())
    throw precondition_error("dimension_mismatch", "center has the wrong dimension");
  if (!(tol > 0.0)) throw precondition_error("invalid_argument", "tol must be positive");
  if (rays.empty()) throw precondition_error("invalid_argument", "no rays");
  const double top = depth(center).value;
  if (!(tau > 0.0) || tau > top) {
    throw precondition_error("empty_region",
                             "tau must lie in (0, depth(center)] = (0, " + std::to_string(top) +
                                 "]");
  }
  const double unit = length_unit(ds);
  const double accuracy = tol * unit;

  ContourPolygon c;
  c.tau = tau;
  c.center = center;
  c.method = depth.method();
  c.lambdas.assign(rays.size(), 0.0);
  detail::parallel_for(rays.size(), [&](std::size_t k) {
    const Eigen::VectorXd& u = rays[k].vector();
    double lo = 0.0, hi = unit;
    int doublings = 0;
    while (depth_at(depth, center, u, hi) >= tau) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > 200)
        throw numeric_error("unbounded_region", "depth stays above tau along a ray");
    }
    while (hi - lo > accuracy) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (depth_at(depth, center, u, mid) >= tau) lo = mid;
      else hi = mid;
    }
    c.lambdas[k] = 0.5 * (lo + hi);
  });
  c.vertices.reserve(rays.size());
  c.directions.reserve(rays.size());
  for (std::size_t k = 0; k < rays.size(); ++k) {
    c.directions.push_back(rays[k].vector());
    c.vertices.push_back(center + c.lambdas[k] * rays[k].vector());
  }
  return c;
}

TauStarEstimate estimate_tau_star(const DepthEvaluator& projection, const Point& center,
                                  const TauStarOptions& options) {
  if (projection.method().kind != DepthKind::kProjection)
    throw precondition_error("invalid_method", "tau* is defined for projection depth");
  const Dataset& ds = projection.dataset();
  const double lambda_max = options.lambda_max_spreads * length_unit(ds);
  const auto rays = contour_directions(static_cast<int>(ds.dim()), options.n_rays,
                                       projection.method().seed);
  TauStarEstimate est;
  for (const auto& u : rays) {
    const RayProfile p = ray_profile(projection, center, u, lambda_max, options.samples);
    est.tails.push_back(detect_linear_tail(p, options.rel_tol));
    est.ell_hat = std::max(est.ell_hat, est.tails.back().ell_hat);
  }
  est.tau_star_hat = 1.0;
  for (const auto& u : rays)
    est.tau_star_hat = std::min(est.tau_star_hat, depth_at(projection, center, u.vector(), est.ell_hat));
  return est;
}

double estimate_tau_star(const Dataset& dataset, int budget, RngSeed seed, int n_rays) {
  DepthMethod m{DepthKind::kProjection, budget > 0 ? std::optional<int>(budget) : std::nullopt,
                seed};
  DepthEvaluator pd(dataset, m);
  TauStarOptions opt;
  opt.n_rays = n_rays;
  const Point center = projection_median(dataset, 1e-9, budget, seed).point;
  return estimate_tau_star(pd, center, opt).tau_star_hat;
}

SimilarityReport similarity_check(std::span<const ContourPolygon> contours, const Point& center,
                                  double rel_tol, std::optional<double> tau_star) {
  if (contours.size() < 3)
    throw precondition_error("invalid_argument", "similarity needs at least three contours");
  const auto& first = contours.front();
  const double scale = std::max(1.0, center.cwiseAbs().maxCoeff());
  for (const auto& c : contours) {
    if (c.center.size() != center.size() ||
        (c.center - center).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw precondition_error("center_mismatch", "contours were traced from different centers");
    if (c.directions.size() != first.directions.size())
      throw precondition_error("ray_mismatch", "contours use different ray sets");
    for (std::size_t k = 0; k < c.directions.size(); ++k) {
      if ((c.directions[k] - first.directions[k]).cwiseAbs().maxCoeff() > 1e-12)
        throw precondition_error("ray_mismatch", "contours use different ray sets");
    }
    if (tau_star && !(c.tau < *tau_star))
      throw precondition_error("tau_above_tau_star", "tau " + std::to_string(c.tau) +
                                                         " is not below tau* " +
                                                         std::to_string(*tau_star));
  }
  for (std::size_t i = 0; i < contours.size(); ++i)
    for (std::size_t j = i + 1; j < contours.size(); ++j)
      if (contours[i].tau == contours[j].tau)
        throw precondition_error("invalid_argument", "tau values must be distinct");

  SimilarityReport r;
  r.tau_star_hat = tau_star;
  r.tolerance = rel_tol;
  r.pass = true;
  std::vector<double> x(contours.size()), y(contours.size());
  for (std::size_t k = 0; k < first.directions.size(); ++k) {
    for (std::size_t i = 0; i < contours.size(); ++i) {
      x[i] = contours[i].lambdas[k];
      y[i] = 1.0 / contours[i].tau - 1.0;
    }
    const Deviation dev = deviation(x, y, fit_line(x, y));
    r.per_ray.push_back({first.directions[k], dev.rel});
    if (!(dev.rel <= rel_tol)) r.pass = false;
  }
  return r;
}

int count_facets_2d(const ContourPolygon& contour, double angle_tol) {
  if (contour.center.size() != 2)
    throw precondition_error("unsupported_dimension", "facet counting is two-dimensional");
  // Drop repeated vertices so every segment has a direction.
  std::vector<Eigen::Vector2d> v;
  for (const auto& p : contour.vertices) {
    const Eigen::Vector2d q(p[0], p[1]);
    if (v.empty() || (q - v.back()).norm() > 0.0) v.push_back(q);
  }
  while (v.size() > 1 && (v.front() - v.back()).norm() == 0.0) v.pop_back();
  if (v.size() < 3) throw precondition_error("invalid_argument", "contour has fewer than 3 vertices");
  const std::size_t n = v.size();
  int corners = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d a = v[i] - v[(i + n - 1) % n];
    const Eigen::Vector2d b = v[(i + 1) % n] - v[i];
    const double turn = std::abs(std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b)));
    if (turn >= angle_tol) ++corners;
  }
  return std::max(corners, 1);
}

}  // namespace depthkit
