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

#include <random>

#include "depthkit/error.hpp"
#include "depthkit/univariate.hpp"

using namespace depthkit;

TEST_CASE("median hand cases") {
  CHECK(median(Sample1D({1, 2, 3})) == 2.0);
  CHECK(median(Sample1D({1, 2, 3, 4})) == 2.5);
  CHECK(median(Sample1D({5})) == 5.0);
  CHECK(median(Sample1D({4, 1, 3, 2})) == 2.5);
}

TEST_CASE("mad hand cases") {
  CHECK(mad(Sample1D({0, 1, 2})) == 1.0);
  CHECK(mad(Sample1D({1, 1, 1})) == 0.0);
  CHECK(mad(Sample1D({0, 1, 2, 3})) == 1.0);
}

TEST_CASE("outlyingness hand cases") {
  const Sample1D s({0, 1, 2});
  CHECK(outlyingness_1d(1, s) == 0.0);
  CHECK(outlyingness_1d(0, s) == 1.0);
  CHECK(outlyingness_1d(4, s) == 3.0);
  CHECK_THROWS_AS(outlyingness_1d(0, Sample1D({1, 1, 1})), Error);
}

TEST_CASE("construction rejects empty and non-finite") {
  CHECK_THROWS_AS(Sample1D({}), Error);
  CHECK_THROWS_AS(Sample1D({1.0, NAN}), Error);
  CHECK_THROWS_AS(Sample1D({INFINITY}), Error);
}

TEST_CASE("in-place median and mad agree with the sample versions") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int n = 1; n < 30; ++n) {
    std::vector<double> v(n);
    for (auto& x : v) x = g(rng);
    const Sample1D s(v);
    const Location loc = median_mad_inplace(v);
    CHECK(loc.median == median(s));
    CHECK(loc.mad == mad(s));
  }
}

TEST_CASE("translation and scale equivariance") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 9;
    std::vector<double> a(n), shifted(n), scaled(n);
    const double s = u(rng), c = u(rng);
    for (int i = 0; i < n; ++i) {
      a[i] = u(rng);
      shifted[i] = a[i] + s;
      scaled[i] = c * a[i];
    }
    const Sample1D A(a), S(shifted), C(scaled);
    CHECK(median(S) == doctest::Approx(median(A) + s).epsilon(1e-12));
    CHECK(mad(S) == doctest::Approx(mad(A)).epsilon(1e-12));
    CHECK(median(C) == doctest::Approx(c * median(A)).epsilon(1e-12));
    CHECK(mad(C) == doctest::Approx(std::abs(c) * mad(A)).epsilon(1e-12));
    const double x = u(rng);
    CHECK(outlyingness_1d(c * x + s, Sample1D([&] {
            std::vector<double> w(n);
            for (int i = 0; i < n; ++i) w[i] = c * a[i] + s;
            return w;
          }())) == doctest::Approx(outlyingness_1d(x, A)).epsilon(1e-9));
  }
}
