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
#include <cstring>
#include <string>
#include <vector>

#include "depthkit/depthkit.h"

namespace {
const std::string kBoston = std::string(DEPTHKIT_TEST_DATA) + "/boston_rm_dis_65.csv";

dk_dataset* triangle() {
  const double rows[] = {0, 0, 1, 0, 0, 1};
  dk_dataset* ds = nullptr;
  REQUIRE(dk_dataset_create(rows, 3, 2, &ds) == DK_OK);
  return ds;
}
}  // namespace

TEST_CASE("dataset lifecycle") {
  dk_dataset* ds = triangle();
  CHECK(dk_dataset_size(ds) == 3);
  CHECK(dk_dataset_dim(ds) == 2);
  int exhaustive = 0;
  CHECK(dk_dataset_general_position(ds, &exhaustive) == 1);
  CHECK(exhaustive == 1);
  double p[2];
  dk_dataset_point(ds, 1, p);
  CHECK(p[0] == 1.0);
  dk_dataset_mean(ds, p);
  CHECK(p[1] == doctest::Approx(1.0 / 3));
  dk_dataset_free(ds);
}

TEST_CASE("csv loading and errors") {
  dk_dataset* ds = nullptr;
  REQUIRE(dk_dataset_load_csv(kBoston.c_str(), 1, "rm,dis", 65, &ds) == DK_OK);
  CHECK(dk_dataset_size(ds) == 65);
  CHECK(dk_dataset_general_position(ds, nullptr) == 0);
  dk_dataset_free(ds);
  CHECK(dk_dataset_load_csv("/no/such/file", 0, nullptr, 0, &ds) == DK_ERR_PARSE);
  CHECK(std::string(dk_last_error_kind()) == "io_error");
  CHECK(std::strlen(dk_last_error_message()) > 0);
  const double bad[] = {0, NAN};
  CHECK(dk_dataset_create(bad, 1, 2, &ds) != DK_OK);
  CHECK(dk_dataset_create(nullptr, 1, 2, &ds) == DK_ERR_PRECONDITION);
}

TEST_CASE("method names round-trip") {
  dk_method_kind k;
  CHECK(dk_method_parse("ehd", &k) == DK_OK);
  CHECK(k == DK_EXTENDED_HALFSPACE);
  CHECK(std::string(dk_method_name(k)) == "extended_halfspace");
  CHECK(dk_method_parse("zonoid", &k) == DK_OK);
  CHECK(k == DK_ZONOID);
  CHECK(dk_method_parse("simplicial", &k) == DK_ERR_PARSE);
}

TEST_CASE("depth values through the C interface") {
  dk_dataset* ds = triangle();
  const double vertex[] = {0, 0}, outside[] = {5, 5}, centroid[] = {1.0 / 3, 1.0 / 3};
  dk_depth_result r{};
  dk_method hd{DK_HALFSPACE, 0, 0};
  REQUIRE(dk_depth(ds, &hd, vertex, nullptr, &r) == DK_OK);
  CHECK(r.value == doctest::Approx(1.0 / 3));
  CHECK(r.exact == 1);
  REQUIRE(dk_depth(ds, &hd, outside, nullptr, &r) == DK_OK);
  CHECK(r.value == 0.0);
  dk_method zd{DK_ZONOID, 0, 0};
  REQUIRE(dk_depth(ds, &zd, centroid, nullptr, &r) == DK_OK);
  CHECK(r.value == doctest::Approx(1.0));
  double oracle = 0;
  REQUIRE(dk_oracle_zonoid_bisection(ds, vertex, 1e-10, &oracle) == DK_OK);
  CHECK(oracle == doctest::Approx(1.0 / 3).epsilon(1e-9));
  REQUIRE(dk_oracle_halfspace_2d(ds, centroid, &oracle) == DK_OK);
  CHECK(oracle == doctest::Approx(1.0 / 3));
  dk_method bad{static_cast<dk_method_kind>(42), 0, 0};
  CHECK(dk_depth(ds, &bad, vertex, nullptr, &r) == DK_ERR_PRECONDITION);
  dk_dataset_free(ds);
}

TEST_CASE("evaluators, contours and similarity") {
  dk_dataset* ds = nullptr;
  REQUIRE(dk_dataset_load_csv(kBoston.c_str(), 1, "rm,dis", 65, &ds) == DK_OK);
  dk_method md{DK_MAHALANOBIS, 0, 0};
  dk_evaluator* ev = nullptr;
  REQUIRE(dk_evaluator_create(ds, &md, nullptr, &ev) == DK_OK);
  double c[2], mean[2];
  dk_evaluator_center(ev, c);
  dk_dataset_mean(ds, mean);
  CHECK(c[0] == mean[0]);
  std::vector<dk_contour*> cs;
  for (double t : {0.2, 0.3, 0.4}) {
    dk_contour* ct = nullptr;
    REQUIRE(dk_contour_trace(ev, t, 36, 1e-10, &ct) == DK_OK);
    cs.push_back(ct);
  }
  CHECK(dk_contour_size(cs[0]) == 36);
  CHECK(dk_contour_tau(cs[1]) == 0.3);
  double v[2], u[2];
  dk_contour_vertex(cs[0], 5, v);
  dk_contour_direction(cs[0], 5, u);
  const double lam = dk_contour_lambda(cs[0], 5);
  CHECK(v[0] == doctest::Approx(c[0] + lam * u[0]));
  dk_depth_result r{};
  REQUIRE(dk_evaluator_depth(ev, v, &r) == DK_OK);
  CHECK(r.value == doctest::Approx(0.2).epsilon(1e-8));

  dk_similarity* rep = nullptr;
  REQUIRE(dk_similarity_check(cs.data(), cs.size(), 1e-6, nullptr, &rep) == DK_OK);
  CHECK(dk_similarity_pass(rep) == 1);
  CHECK(dk_similarity_size(rep) == 36);
  CHECK(dk_similarity_residual(rep, 0) <= 1e-6);
  dk_similarity_free(rep);
  const double low = 0.25;
  CHECK(dk_similarity_check(cs.data(), cs.size(), 1e-6, &low, &rep) == DK_ERR_PRECONDITION);
  CHECK(std::string(dk_last_error_kind()) == "tau_above_tau_star");

  int facets = 0;
  REQUIRE(dk_contour_count_facets(cs[0], 1e-3, &facets) == DK_OK);
  CHECK(facets > 18);

  dk_contour* empty = nullptr;
  CHECK(dk_contour_trace(ev, 1.5, 36, 1e-10, &empty) == DK_ERR_PRECONDITION);
  CHECK(std::string(dk_last_error_kind()) == "empty_region");
  for (auto* ct : cs) dk_contour_free(ct);
  dk_evaluator_free(ev);
  dk_dataset_free(ds);
}

TEST_CASE("medians, hull, linear tail") {
  dk_dataset* ds = nullptr;
  REQUIRE(dk_dataset_load_csv(kBoston.c_str(), 1, "rm,dis", 65, &ds) == DK_OK);
  double p[2];
  dk_median_result m{};
  REQUIRE(dk_median(ds, DK_PROJECTION, 1e-9, 1024, 0, p, &m) == DK_OK);
  CHECK(m.attained_depth > 0.5);
  CHECK(dk_median(ds, DK_ZONOID, 1e-9, 0, 0, p, &m) == DK_ERR_PRECONDITION);

  dk_hull* h = nullptr;
  REQUIRE(dk_hull_2d(ds, &h) == DK_OK);
  CHECK(dk_hull_size(h) >= 3);
  double v[2], w[2];
  dk_hull_vertex(h, 0, v);
  dk_dataset_point(ds, dk_hull_index(h, 0), w);
  CHECK(v[0] == w[0]);
  dk_hull_free(h);

  dk_method pd{DK_PROJECTION, 2048, 0};
  dk_evaluator* ev = nullptr;
  REQUIRE(dk_evaluator_create(ds, &pd, nullptr, &ev) == DK_OK);
  const double dir[] = {0.5022, -0.8648};
  dk_linear_tail_result t{};
  REQUIRE(dk_linear_tail(ev, dir, 5 * dk_dataset_spread(ds), 200, 1e-2, &t) == DK_OK);
  CHECK(t.b_hat > 0.0);
  CHECK(t.rel_residual <= 1e-2);
  const double tiny_dir[] = {0.0, 0.0};
  CHECK(dk_linear_tail(ev, tiny_dir, 5, 200, 1e-2, &t) == DK_ERR_PRECONDITION);
  dk_evaluator_free(ev);

  dk_method md{DK_MAHALANOBIS, 0, 0};
  REQUIRE(dk_evaluator_create(ds, &md, nullptr, &ev) == DK_OK);
  double ts = 0;
  CHECK(dk_estimate_tau_star(ev, 8, 20, 100, 1e-6, &ts, nullptr) == DK_ERR_PRECONDITION);
  dk_evaluator_free(ev);
  dk_dataset_free(ds);
}
