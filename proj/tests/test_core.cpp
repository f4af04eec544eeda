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

#include "depthkit/core.hpp"
#include "depthkit/error.hpp"
#include "test_support.hpp"

using namespace depthkit;

namespace {
Dataset make(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return Dataset(m);
}
}  // namespace

TEST_CASE("general position examples") {
  CHECK(make({{0, 0}, {1, 0}, {0, 1}}).general_position());
  CHECK_FALSE(make({{0, 0}, {1, 1}, {2, 2}}).general_position());
  CHECK_FALSE(make({{1}, {2}, {2}}).general_position());
  CHECK(make({{1}, {2}, {3}}).general_position());
  CHECK(make({{0, 0}, {1, 0}, {0, 1}}).general_position_info().exhaustive);
}

TEST_CASE("general position needs n >= d + 1") {
  CHECK_FALSE(make({{0, 0}, {1, 0}}).general_position());
}

TEST_CASE("general position falls back to sampling for large n") {
  Dataset ds(dktest::gaussian_points(300, 2, 5));
  CHECK_FALSE(ds.general_position_info().exhaustive);
  CHECK(ds.general_position());
}

TEST_CASE("collinear triple buried in a random cloud is found") {
  Eigen::MatrixXd m = dktest::gaussian_points(30, 2, 9);
  m.row(29) = 0.5 * (m.row(3) + m.row(17));
  CHECK_FALSE(validate_general_position(m, 1e-9).holds);
}

TEST_CASE("dataset construction rejects bad input") {
  CHECK_THROWS_AS(Dataset(Eigen::MatrixXd(0, 2)), Error);
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, NAN, 2;
  CHECK_THROWS_AS(Dataset{m}, Error);
  std::vector<Point> pts{Point::Zero(2), Point::Zero(3)};
  CHECK_THROWS_AS(Dataset::from_points(pts), Error);
}

TEST_CASE("dataset summary values") {
  Dataset ds = make({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  CHECK(ds.mean()[0] == 1.0);
  CHECK(ds.mean()[1] == 1.0);
  CHECK(ds.spread() == 2.0);
  CHECK(ds.coordinate_scale() == 2.0);
  CHECK(default_general_position_tol(ds) == doctest::Approx(2e-9));
}

TEST_CASE("direction normalizes and rejects zero") {
  Direction u(Eigen::Vector2d(3, 4));
  CHECK(u[0] == doctest::Approx(0.6));
  CHECK(std::abs(u.vector().norm() - 1.0) <= 1e-12);
  CHECK_THROWS_AS(Direction(Eigen::Vector2d(0, 0)), Error);
  CHECK_THROWS_AS(Direction(Eigen::Vector2d(NAN, 1)), Error);
}

TEST_CASE("random directions") {
  SUBCASE("d = 2 equal spacing") {
    auto u = random_directions(2, 2, {123});
    REQUIRE(u.size() == 2);
    CHECK(std::atan2(u[0][1], u[0][0]) == doctest::Approx(0.0));
    CHECK(std::atan2(u[1][1], u[1][0]) == doctest::Approx(std::numbers::pi / 2));
  }
  SUBCASE("d = 1 contains both signs") {
    auto u = random_directions(1, 5, {4});
    bool plus = false, minus = false;
    for (const auto& v : u) {
      plus |= v[0] == 1.0;
      minus |= v[0] == -1.0;
    }
    CHECK(plus);
    CHECK(minus);
  }
  SUBCASE("deterministic and unit norm") {
    for (int d : {3, 4, 6}) {
      auto a = random_directions(d, 100, {7});
      auto b = random_directions(d, 100, {7});
      REQUIRE(a.size() == 100);
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK((a[i].vector() - b[i].vector()).norm() == 0.0);
        CHECK(std::abs(a[i].vector().norm() - 1.0) <= 1e-12);
      }
    }
  }
  SUBCASE("different seeds differ in d = 3") {
    auto a = random_directions(3, 10, {1});
    auto b = random_directions(3, 10, {2});
    CHECK((a[0].vector() - b[0].vector()).norm() > 0.0);
  }
}
