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
#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "depthkit/depthkit.h"

using depthkit::cli::run;
using nlohmann::json;

namespace {
const std::string kBoston = std::string(DEPTHKIT_TEST_DATA) + "/boston_rm_dis_65.csv";

std::vector<std::string> boston_args(std::vector<std::string> head) {
  for (const char* a : {"--data", kBoston.c_str(), "--has-header", "--columns", "rm,dis",
                        "--row-limit", "65"})
    head.emplace_back(a);
  return head;
}

json ok(const std::vector<std::string>& args) {
  const auto r = run(args);
  INFO(r.err);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

int error_code(const std::vector<std::string>& args) {
  const auto r = run(args);
  if (r.code != 0) {
    const json e = json::parse(r.err);
    CHECK(e["error"]["code"].get<int>() == r.code);
    CHECK(r.err.find('\n') == r.err.size() - 1);
  }
  return r.code;
}
}  // namespace

TEST_CASE("zonoid depth at the mean") {
  const json j = ok(boston_args({"depth", "--method", "zonoid", "--point", "mean"}));
  CHECK(j["schema_version"] == 1);
  CHECK(j["value"].get<double>() == 1.0);
  CHECK(j["exact"] == true);
}

TEST_CASE("extended halfspace contours scale by 1.25 about the Tukey median") {
  const json j = ok(boston_args({"contour", "--method", "ehd", "--taus", "0.8/n,1/n", "--rays", "90"}));
  const json med = ok(boston_args({"median", "--method", "halfspace"}));
  CHECK(j["center"] == med["point"]);
  REQUIRE(j["contours"].size() == 2);
  const auto& outer = j["contours"][0];
  const auto& inner = j["contours"][1];
  CHECK(outer["tau"].get<double>() == doctest::Approx(0.8 / 65));
  CHECK(outer["tau_spec"] == "0.8/n");
  for (std::size_t k = 0; k < 90; ++k) {
    const double lo = outer["lambdas"][k].get<double>(), li = inner["lambdas"][k].get<double>();
    CHECK(std::abs(lo - 1.25 * li) <= 1e-8);
  }
}

TEST_CASE("projection similarity below the estimated tau star") {
  const json j = ok(boston_args({"similarity", "--method", "projection", "--taus",
                                 "0.002,0.004,0.006", "--rays", "36"}));
  CHECK(j["tau_star_hat"].get<double>() > 0.006);
  CHECK(j["pass"] == true);
  CHECK(j["per_ray"].size() == 36);
}

TEST_CASE("contour JSON round-trips bit-exactly and is deterministic") {
  const auto args = boston_args({"contour", "--method", "md", "--taus", "0.3,0.1", "--rays", "24"});
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);

  dk_dataset* ds = nullptr;
  REQUIRE(dk_dataset_load_csv(kBoston.c_str(), 1, "rm,dis", 65, &ds) == DK_OK);
  dk_method md{DK_MAHALANOBIS, 0, 0};
  dk_evaluator* ev = nullptr;
  REQUIRE(dk_evaluator_create(ds, &md, nullptr, &ev) == DK_OK);
  dk_contour* c = nullptr;
  REQUIRE(dk_contour_trace(ev, 0.3, 24, 1e-10, &c) == DK_OK);
  double v[2];
  for (std::size_t i = 0; i < 24; ++i) {
    dk_contour_vertex(c, i, v);
    CHECK(j["contours"][0]["vertices"][i][0].get<double>() == v[0]);
    CHECK(j["contours"][0]["vertices"][i][1].get<double>() == v[1]);
  }
  dk_contour_free(c);
  dk_evaluator_free(ev);
  dk_dataset_free(ds);
}

TEST_CASE("contour CSV output") {
  const auto r = run(boston_args({"contour", "--method", "ezd", "--taus", "1/n,0.5/n", "--rays",
                                  "12", "--output", "csv"}));
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# tau=", 0) == 0);
  std::getline(in, line);
  CHECK(line == "ray_index,angle,lambda,x,y");
  std::getline(in, line);
  CHECK(line.rfind("0,0,", 0) == 0);
  const json j = ok(boston_args({"contour", "--method", "ezd", "--taus", "1/n", "--rays", "12"}));
  const double x = std::strtod(line.substr(line.rfind(',', line.rfind(',') - 1) + 1).c_str(), nullptr);
  CHECK(x == j["contours"][0]["vertices"][0][0].get<double>());
}

TEST_CASE("hull and audit commands") {
  const json h = ok(boston_args({"hull"}));
  CHECK(h["vertices"].size() == h["indices"].size());
  const json a = ok(boston_args({"audit", "--method", "halfspace", "--queries", "30"}));
  CHECK(a["max_abs_diff"].get<double>() == 0.0);
  const json z = ok(boston_args({"audit", "--method", "zonoid", "--queries", "10"}));
  CHECK(z["max_abs_diff"].get<double>() <= 1e-6);
}

TEST_CASE("profile command") {
  const json j = ok(boston_args({"profile", "--method", "projection", "--budget", "2048",
                                 "--direction", "0.5022,-0.8648", "--lambda-max", "5"}));
  CHECK(j["rel_residual"].get<double>() <= 1e-2);
  CHECK(j["b_hat"].get<double>() > 0);
}

TEST_CASE("exit codes") {
  CHECK(error_code(boston_args({"depth", "--method", "nope", "--point", "1,2"})) == 2);
  CHECK(error_code(boston_args({"depth", "--point", "1,2,3"})) == 2);
  CHECK(error_code({"depth", "--point", "1,2"}) == 2);
  CHECK(error_code({"frobnicate"}) == 2);
  CHECK(error_code(boston_args({"contour", "--method", "md", "--taus", "0.8/m"})) == 2);
  CHECK(error_code(boston_args({"contour", "--method", "md", "--taus", "0.1", "--rays", "4"})) == 2);
  CHECK(error_code(boston_args({"contour", "--method", "md", "--taus", "1.5"})) == 3);
  CHECK(error_code(boston_args({"median", "--method", "zonoid"})) == 3);
  CHECK(error_code(boston_args({"profile", "--method", "hd", "--direction", "1,0",
                                "--lambda-max", "20"})) == 5);
  CHECK(error_code(boston_args({"similarity", "--method", "md", "--taus", "0.1,0.2"})) == 3);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("contour") != std::string::npos);
}
