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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "depthkit/contour.hpp"
#include "depthkit/error.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/median.hpp"
#include "test_support.hpp"

using namespace depthkit;

namespace {
RayProfile synthetic(double (*g)(double), double lambda_max, int samples) {
  RayProfile p;
  p.center = Eigen::Vector2d(0, 0);
  p.direction = Eigen::Vector2d(1, 0);
  for (int i = 0; i < samples; ++i) {
    const double lambda = lambda_max * i / (samples - 1);
    p.samples.push_back({lambda, 1.0 / (1.0 + g(lambda))});
  }
  return p;
}

Dataset identity_cov() {
  const double r = std::sqrt(2.0);
  Eigen::MatrixXd m(4, 2);
  m << r, 0, -r, 0, 0, r, 0, -r;
  return Dataset(m);
}

Dataset diamond() {
  Eigen::MatrixXd m(4, 2);
  m << 1, 0, 0, 1, -1, 0, 0, -1;
  return Dataset(m);
}
}  // namespace

TEST_CASE("contour directions") {
  const auto u = contour_directions(2, 8);
  REQUIRE(u.size() == 8);
  CHECK(u[2][0] == doctest::Approx(0.0));
  CHECK(u[2][1] == doctest::Approx(1.0));
  CHECK(contour_directions(1, 10).size() == 2);
  const auto u3 = contour_directions(3, 11, {2});
  CHECK(u3.size() == 11);
  CHECK((u3[0].vector() + u3[6].vector()).norm() < 1e-15);
}

TEST_CASE("linear tail of synthetic profiles") {
  SUBCASE("kinked") {
    const auto p = synthetic([](double l) { return std::max(2.0, 1.0 + 0.5 * l); }, 10.0, 101);
    const LinearTail t = detect_linear_tail(p, 1e-9);
    CHECK(t.ell_hat == doctest::Approx(2.0));
    CHECK(t.a_hat == doctest::Approx(1.0));
    CHECK(t.b_hat == doctest::Approx(0.5));
    CHECK(t.residual < 1e-12);
  }
  SUBCASE("globally linear") {
    const auto p = synthetic([](double l) { return 3.0 + l; }, 5.0, 40);
    const LinearTail t = detect_linear_tail(p, 1e-9);
    CHECK(t.ell_hat == 0.0);
    CHECK(t.start_index == 0);
    CHECK(t.a_hat == doctest::Approx(3.0));
    CHECK(t.b_hat == doctest::Approx(1.0));
  }
  SUBCASE("curved profile has no tail") {
    const auto p = synthetic([](double l) { return l * l; }, 5.0, 40);
    try {
      detect_linear_tail(p, 1e-6);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNoLinearTail);
    }
  }
  SUBCASE("flat profile has no positive slope") {
    const auto p = synthetic([](double) { return 2.0; }, 5.0, 40);
    CHECK_THROWS_AS(detect_linear_tail(p, 1e-6), Error);
  }
}

TEST_CASE("mahalanobis profile is linear from the mean") {
  const Dataset ds(dktest::gaussian_points(30, 2, 3));
  const auto cd = make_centered_depth(ds, {DepthKind::kMahalanobis, {}, {}});
  const Direction u(Eigen::Vector2d(0.3, -1));
  const RayProfile p = ray_profile(cd.evaluator, cd.center, u, 5.0, 50);
  const Eigen::Matrix2d cov =
      (ds.points().rowwise() - ds.mean().transpose()).transpose() *
      (ds.points().rowwise() - ds.mean().transpose()) / 30.0;
  const double slope = std::sqrt(u.vector().dot(cov.inverse() * u.vector()));
  for (const auto& s : p.samples)
    CHECK(1.0 / s.depth - 1.0 == doctest::Approx(s.lambda * slope).epsilon(1e-10));
  const LinearTail t = detect_linear_tail(p, 1e-9);
  CHECK(t.ell_hat <= p.samples[1].lambda);
  CHECK(t.b_hat == doctest::Approx(slope).epsilon(1e-10));
}

TEST_CASE("extended halfspace profile outside the hull") {
  const Dataset ds(dktest::gaussian_points(20, 2, 4));
  const auto cd = make_centered_depth(ds, {DepthKind::kExtendedHalfspace, {}, {}});
  const Direction u(Eigen::Vector2d(1, 1));
  const double lb = ConvexHull(ds).ray_exit(cd.center, u).lambda_boundary;
  const RayProfile p = ray_profile(cd.evaluator, cd.center, u, 10 * lb, 101);
  for (const auto& s : p.samples)
    if (s.lambda > lb * (1 + 1e-9)) CHECK(s.depth == doctest::Approx(lb / (20 * s.lambda)));
}

TEST_CASE("projection profile in 1-D") {
  Eigen::MatrixXd m(5, 1);
  m << 0, 1, 3, 4, 7;
  const Dataset ds(m);
  const auto cd = make_centered_depth(ds, {DepthKind::kProjection, {}, {}});
  CHECK(cd.center[0] == 3.0);
  const RayProfile p = ray_profile(cd.evaluator, cd.center, Direction(Eigen::VectorXd::Ones(1)), 10, 21);
  for (const auto& s : p.samples) CHECK(1.0 / s.depth - 1.0 == doctest::Approx(s.lambda / 2.0));
  CHECK(estimate_tau_star(ds, 0, {}, 8) == doctest::Approx(1.0));
}

TEST_CASE("ray profile flags increasing depth") {
  const Dataset ds(dktest::gaussian_points(20, 2, 5));
  const auto cd = make_centered_depth(ds, {DepthKind::kMahalanobis, {}, {}});
  const Point off_center = cd.center + Eigen::Vector2d(3, 0);
  try {
    ray_profile(cd.evaluator, off_center, Direction(Eigen::Vector2d(-1, 0)), 6, 30);
    FAIL("expected a monotonicity error");
  } catch (const Error& e) {
    CHECK(e.kind() == "monotonicity_violation");
  }
}

TEST_CASE("mahalanobis contour is an ellipse") {
  const Dataset ds(dktest::gaussian_points(40, 2, 6));
  const auto cd = make_centered_depth(ds, {DepthKind::kMahalanobis, {}, {}});
  const auto c = trace_contour(cd.evaluator, 0.5, cd.center, 72);
  const Eigen::MatrixXd centered = ds.points().rowwise() - ds.mean().transpose();
  const Eigen::Matrix2d inv = (centered.transpose() * centered / 40.0).inverse();
  REQUIRE(c.vertices.size() == 72);
  for (const auto& v : c.vertices) {
    const Eigen::Vector2d r = v - ds.mean();
    CHECK(std::abs(r.dot(inv * r) - 1.0) <= 1e-6);
  }
}

TEST_CASE("extended depth contours are scaled hull boundaries") {
  const Dataset ds(dktest::gaussian_points(25, 2, 7));
  for (auto kind : {DepthKind::kExtendedHalfspace, DepthKind::kExtendedZonoid}) {
    const auto cd = make_centered_depth(ds, {kind, {}, {}});
    const ConvexHull hull(ds);
    const double tol = 1e-10;
    const auto c = trace_contour(cd.evaluator, 1.0 / (2 * 25), cd.center, 90, tol);
    const auto outer = trace_contour(cd.evaluator, 0.8 / 25, cd.center, 90, tol);
    for (std::size_t k = 0; k < c.lambdas.size(); ++k) {
      const double lb = hull.ray_exit(cd.center, Direction(c.directions[k])).lambda_boundary;
      CHECK(std::abs(c.lambdas[k] - 2 * lb) <= 2 * tol * ds.spread());
      CHECK(std::abs(outer.lambdas[k] - 1.25 * lb) <= 2 * tol * ds.spread());
    }
  }
}

TEST_CASE("trace rejects empty regions") {
  const Dataset ds(dktest::gaussian_points(20, 2, 8));
  const auto cd = make_centered_depth(ds, {DepthKind::kMahalanobis, {}, {}});
  CHECK_THROWS_AS(trace_contour(cd.evaluator, 0.0, cd.center, 16), Error);
  CHECK_THROWS_AS(trace_contour(cd.evaluator, -0.1, cd.center, 16), Error);
  const Point off = cd.center + Eigen::Vector2d(2, 0);
  CHECK_THROWS_AS(trace_contour(cd.evaluator, 0.99, off, 16), Error);
}

TEST_CASE("contours nest") {
  const Dataset ds = dktest::boston();
  const auto cd = make_centered_depth(ds, {DepthKind::kProjection, {}, {}});
  const auto inner = trace_contour(cd.evaluator, 0.3, cd.center, 36, 1e-8);
  const auto outer = trace_contour(cd.evaluator, 0.1, cd.center, 36, 1e-8);
  for (std::size_t k = 0; k < inner.lambdas.size(); ++k) CHECK(inner.lambdas[k] <= outer.lambdas[k]);
}

TEST_CASE("similarity of mahalanobis and extended contours") {
  const Dataset ds(dktest::gaussian_points(30, 2, 9));
  SUBCASE("mahalanobis") {
    const auto cd = make_centered_depth(ds, {DepthKind::kMahalanobis, {}, {}});
    std::vector<ContourPolygon> cs;
    for (double t : {0.2, 0.3, 0.4}) cs.push_back(trace_contour(cd.evaluator, t, cd.center, 60));
    const auto r = similarity_check(cs, cd.center, 1e-6);
    CHECK(r.pass);
    for (const auto& pr : r.per_ray) CHECK(pr.residual <= 1e-8);
  }
  SUBCASE("extended halfspace") {
    const auto cd = make_centered_depth(ds, {DepthKind::kExtendedHalfspace, {}, {}});
    std::vector<ContourPolygon> cs;
    for (double t : {0.3, 0.5, 0.8}) cs.push_back(trace_contour(cd.evaluator, t / 30, cd.center, 60));
    const auto r = similarity_check(cs, cd.center, 1e-6);
    CHECK(r.pass);
    const ConvexHull hull(ds);
    for (std::size_t k = 0; k < 60; ++k) {
      const double lb = hull.ray_exit(cd.center, Direction(cs[0].directions[k])).lambda_boundary;
      // 1/tau - 1 = (n / lb) lambda - 1 on each ray.
      for (const auto& c : cs)
        CHECK(1.0 / c.tau == doctest::Approx(30.0 * c.lambdas[k] / lb).epsilon(1e-8));
    }
  }
}

TEST_CASE("similarity check preconditions") {
  const Dataset ds(dktest::gaussian_points(30, 2, 10));
  const auto cd = make_centered_depth(ds, {DepthKind::kMahalanobis, {}, {}});
  std::vector<ContourPolygon> cs;
  for (double t : {0.2, 0.3}) cs.push_back(trace_contour(cd.evaluator, t, cd.center, 20));
  CHECK_THROWS_AS(similarity_check(cs, cd.center, 1e-6), Error);
  cs.push_back(trace_contour(cd.evaluator, 0.4, cd.center, 24));
  CHECK_THROWS_AS(similarity_check(cs, cd.center, 1e-6), Error);
  cs.back() = trace_contour(cd.evaluator, 0.4, cd.center, 20);
  CHECK(similarity_check(cs, cd.center, 1e-6).pass);
  CHECK_THROWS_AS(similarity_check(cs, cd.center, 1e-6, 0.35), Error);
  cs.back() = trace_contour(cd.evaluator, 0.3, cd.center, 20);
  CHECK_THROWS_AS(similarity_check(cs, cd.center, 1e-6), Error);
}

TEST_CASE("facet counts") {
  SUBCASE("traced diamond has four facets") {
    const auto cd = make_centered_depth(diamond(), {DepthKind::kExtendedZonoid, {}, {}});
    const auto c = trace_contour(cd.evaluator, 0.5 / 4, cd.center, 100);
    CHECK(count_facets_2d(c, 1e-3) == 4);
  }
  SUBCASE("traced circle has no flat runs") {
    const auto cd = make_centered_depth(identity_cov(), {DepthKind::kMahalanobis, {}, {}});
    const auto c = trace_contour(cd.evaluator, 0.5, cd.center, 360);
    CHECK(count_facets_2d(c, 1e-3) > 180);
  }
  SUBCASE("too few vertices") {
    ContourPolygon c;
    c.center = Eigen::Vector2d(0, 0);
    c.vertices = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
    CHECK_THROWS_AS(count_facets_2d(c, 1e-3), Error);
  }
}

TEST_CASE("tau star on the fixture is conservative") {
  const Dataset ds = dktest::boston();
  const auto cd = make_centered_depth(ds, {DepthKind::kProjection, 1024, {}});
  TauStarOptions opt;
  opt.n_rays = 16;
  const auto est = estimate_tau_star(cd.evaluator, cd.center, opt);
  REQUIRE(est.tails.size() == 16);
  for (const auto& u : contour_directions(2, 16)) {
    const double pd = cd.evaluator(cd.center + est.ell_hat * u.vector()).value;
    CHECK(est.tau_star_hat <= pd);
  }
}
