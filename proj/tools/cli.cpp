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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "depthkit/depthkit.h"

namespace depthkit::cli {
namespace {

using nlohmann::ordered_json;
constexpr int kSchemaVersion = 1;

/// Carries a library status out of the command handlers.
struct Failure {
  int code;
  std::string kind;
  std::string message;
};

[[noreturn]] void raise(int code, std::string kind, std::string message) {
  throw Failure{code, std::move(kind), std::move(message)};
}

void check(dk_status s) {
  if (s != DK_OK) raise(static_cast<int>(s), dk_last_error_kind(), dk_last_error_message());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using DatasetPtr = std::unique_ptr<dk_dataset, Deleter<dk_dataset, dk_dataset_free>>;
using EvaluatorPtr = std::unique_ptr<dk_evaluator, Deleter<dk_evaluator, dk_evaluator_free>>;
using ContourPtr = std::unique_ptr<dk_contour, Deleter<dk_contour, dk_contour_free>>;
using SimilarityPtr = std::unique_ptr<dk_similarity, Deleter<dk_similarity, dk_similarity_free>>;
using HullPtr = std::unique_ptr<dk_hull, Deleter<dk_hull, dk_hull_free>>;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    raise(DK_ERR_PARSE, "bad_argument", "cannot parse " + what + " '" + s + "'");
  return v;
}

struct Options {
  std::string data;
  bool has_header = false;
  std::string columns;
  long row_limit = 0;
  std::string method = "projection";
  int budget = 0;
  std::uint64_t seed = 0;
  std::string output = "json";
  std::string point;
  std::string center;
  std::string taus;
  int rays = 360;
  double tol = 1e-10;
  double rel_tol = 1e-2;
  std::string tau_star = "auto";
  int queries = 20;
  int grid = 100000;
  std::string direction;
  double lambda_max = 20.0;
  int samples = 400;
  double median_tol = 1e-9;
};

struct Context {
  DatasetPtr ds;
  std::size_t n = 0, d = 0;
  dk_method method{};
};

Context load(const Options& o) {
  Context c;
  dk_dataset* raw = nullptr;
  check(dk_dataset_load_csv(o.data.c_str(), o.has_header ? 1 : 0,
                            o.columns.empty() ? nullptr : o.columns.c_str(), o.row_limit, &raw));
  c.ds.reset(raw);
  c.n = dk_dataset_size(raw);
  c.d = dk_dataset_dim(raw);
  dk_method_kind kind;
  check(dk_method_parse(o.method.c_str(), &kind));
  c.method = {kind, o.budget, o.seed};
  return c;
}

/// "mean" or a comma-separated coordinate list.
std::vector<double> parse_point(const std::string& s, const Context& c, const std::string& what) {
  std::vector<double> p(c.d);
  if (s == "mean") {
    dk_dataset_mean(c.ds.get(), p.data());
    return p;
  }
  const auto parts = split(s, ',');
  if (parts.size() != c.d)
    raise(DK_ERR_PARSE, "bad_argument",
          what + " needs " + std::to_string(c.d) + " coordinates, got '" + s + "'");
  for (std::size_t i = 0; i < c.d; ++i) p[i] = parse_real(parts[i], what);
  return p;
}

/// Levels like 0.01, 0.8/65 or 0.8/n, where n is the sample size.
std::vector<std::pair<std::string, double>> parse_taus(const std::string& s, std::size_t n) {
  std::vector<std::pair<std::string, double>> out;
  auto term = [&](const std::string& t) {
    if (t == "n") return static_cast<double>(n);
    return parse_real(t, "tau");
  };
  for (const auto& item : split(s, ',')) {
    const auto parts = split(item, '/');
    double v = 0.0;
    if (parts.size() == 1) v = term(parts[0]);
    else if (parts.size() == 2) v = term(parts[0]) / term(parts[1]);
    else raise(DK_ERR_PARSE, "bad_argument", "cannot parse tau '" + item + "'");
    for (const auto& prev : out)
      if (prev.second == v) raise(DK_ERR_PARSE, "bad_argument", "tau values must be distinct");
    out.emplace_back(item, v);
  }
  if (out.empty()) raise(DK_ERR_PARSE, "bad_argument", "no tau values given");
  return out;
}

ordered_json header(const std::string& command, const Context& c) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["method"] = dk_method_name(c.method.kind);
  j["n"] = c.n;
  j["dim"] = c.d;
  return j;
}

EvaluatorPtr evaluator(const Context& c, const Options& o) {
  std::vector<double> center;
  if (!o.center.empty()) center = parse_point(o.center, c, "center");
  dk_evaluator* ev = nullptr;
  check(dk_evaluator_create(c.ds.get(), &c.method, center.empty() ? nullptr : center.data(), &ev));
  return EvaluatorPtr(ev);
}

std::vector<double> center_of(const dk_evaluator* ev, std::size_t d) {
  std::vector<double> p(d);
  dk_evaluator_center(ev, p.data());
  return p;
}

std::string cmd_depth(const Options& o) {
  Context c = load(o);
  if (o.point.empty()) raise(DK_ERR_PARSE, "bad_argument", "--point is required");
  const auto x = parse_point(o.point, c, "point");
  std::vector<double> center;
  if (!o.center.empty()) center = parse_point(o.center, c, "center");
  dk_depth_result r{};
  check(dk_depth(c.ds.get(), &c.method, x.data(), center.empty() ? nullptr : center.data(), &r));
  ordered_json j = header("depth", c);
  j["point"] = x;
  j["value"] = r.value;
  j["exact"] = r.exact != 0;
  j["budget_used"] = r.budget_used;
  return j.dump() + "\n";
}

std::string cmd_median(const Options& o) {
  Context c = load(o);
  std::vector<double> p(c.d);
  dk_median_result r{};
  const dk_status s = dk_median(c.ds.get(), c.method.kind, o.median_tol, o.budget, o.seed,
                                p.data(), &r);
  if (s != DK_OK && s != DK_ERR_NUMERIC) check(s);
  ordered_json j = header("median", c);
  j["point"] = p;
  j["attained_depth"] = r.attained_depth;
  j["method_tolerance"] = r.method_tolerance;
  j["converged"] = s == DK_OK;
  if (s != DK_OK) {
    // Report the best iterate, then fail.
    raise(static_cast<int>(s), dk_last_error_kind(),
          std::string(dk_last_error_message()) + "; best iterate " + j.dump());
  }
  return j.dump() + "\n";
}

std::vector<ContourPtr> trace_all(const dk_evaluator* ev,
                                  const std::vector<std::pair<std::string, double>>& taus,
                                  const Options& o) {
  if (o.rays < 8) raise(DK_ERR_PARSE, "bad_argument", "--rays must be at least 8");
  std::vector<ContourPtr> out;
  for (const auto& t : taus) {
    dk_contour* raw = nullptr;
    check(dk_contour_trace(ev, t.second, o.rays, o.tol, &raw));
    out.emplace_back(raw);
  }
  return out;
}

std::string cmd_contour(const Options& o) {
  Context c = load(o);
  if (o.taus.empty()) raise(DK_ERR_PARSE, "bad_argument", "--taus is required");
  const auto taus = parse_taus(o.taus, c.n);
  EvaluatorPtr ev = evaluator(c, o);
  const auto contours = trace_all(ev.get(), taus, o);
  std::vector<double> v(c.d), u(c.d);
  if (o.output == "csv") {
    if (c.d != 2) raise(DK_ERR_PRECONDITION, "unsupported_output", "csv contours are 2-D only");
    std::string s;
    for (std::size_t k = 0; k < contours.size(); ++k) {
      const dk_contour* ct = contours[k].get();
      s += "# tau=" + g17(dk_contour_tau(ct)) + "\n";
      s += "ray_index,angle,lambda,x,y\n";
      for (std::size_t i = 0; i < dk_contour_size(ct); ++i) {
        dk_contour_vertex(ct, i, v.data());
        dk_contour_direction(ct, i, u.data());
        s += std::to_string(i) + "," + g17(std::atan2(u[1], u[0])) + "," +
             g17(dk_contour_lambda(ct, i)) + "," + g17(v[0]) + "," + g17(v[1]) + "\n";
      }
    }
    return s;
  }
  ordered_json j = header("contour", c);
  j["center"] = center_of(ev.get(), c.d);
  j["rays"] = o.rays;
  j["tol"] = o.tol;
  ordered_json list = ordered_json::array();
  for (std::size_t k = 0; k < contours.size(); ++k) {
    const dk_contour* ct = contours[k].get();
    ordered_json cj;
    cj["tau"] = dk_contour_tau(ct);
    cj["tau_spec"] = taus[k].first;
    ordered_json verts = ordered_json::array(), dirs = ordered_json::array(),
                 lams = ordered_json::array();
    for (std::size_t i = 0; i < dk_contour_size(ct); ++i) {
      dk_contour_vertex(ct, i, v.data());
      dk_contour_direction(ct, i, u.data());
      verts.push_back(v);
      dirs.push_back(u);
      lams.push_back(dk_contour_lambda(ct, i));
    }
    cj["vertices"] = std::move(verts);
    cj["directions"] = std::move(dirs);
    cj["lambdas"] = std::move(lams);
    list.push_back(std::move(cj));
  }
  j["contours"] = std::move(list);
  return j.dump() + "\n";
}

std::string cmd_similarity(const Options& o) {
  Context c = load(o);
  if (o.taus.empty()) raise(DK_ERR_PARSE, "bad_argument", "--taus is required");
  const auto taus = parse_taus(o.taus, c.n);
  EvaluatorPtr ev = evaluator(c, o);
  std::optional<double> tau_star, ell;
  if (o.tau_star == "auto") {
    if (c.method.kind == DK_PROJECTION) {
      double ts = 0.0, l = 0.0;
      check(dk_estimate_tau_star(ev.get(), 64, 20.0, 400, 1e-6, &ts, &l));
      tau_star = ts;
      ell = l;
    }
  } else if (o.tau_star != "none") {
    tau_star = parse_real(o.tau_star, "tau-star");
  }
  const auto contours = trace_all(ev.get(), taus, o);
  std::vector<const dk_contour*> raw;
  for (const auto& ct : contours) raw.push_back(ct.get());
  dk_similarity* rep = nullptr;
  check(dk_similarity_check(raw.data(), raw.size(), o.rel_tol,
                            tau_star ? &*tau_star : nullptr, &rep));
  SimilarityPtr report(rep);
  ordered_json j = header("similarity", c);
  j["center"] = center_of(ev.get(), c.d);
  j["taus"] = ordered_json::array();
  for (const auto& t : taus) j["taus"].push_back(t.second);
  j["tau_star_hat"] = tau_star ? ordered_json(*tau_star) : ordered_json(nullptr);
  if (ell) j["ell_hat"] = *ell;
  j["tolerance"] = o.rel_tol;
  j["pass"] = dk_similarity_pass(rep) != 0;
  double worst = 0.0;
  ordered_json rays = ordered_json::array();
  std::vector<double> u(c.d);
  for (std::size_t i = 0; i < dk_similarity_size(rep); ++i) {
    dk_similarity_direction(rep, i, u.data());
    const double r = dk_similarity_residual(rep, i);
    worst = std::max(worst, r);
    rays.push_back({{"direction", u}, {"residual", r}});
  }
  j["max_residual"] = worst;
  j["per_ray"] = std::move(rays);
  return j.dump() + "\n";
}

std::string cmd_hull(const Options& o) {
  Context c = load(o);
  dk_hull* raw = nullptr;
  check(dk_hull_2d(c.ds.get(), &raw));
  HullPtr h(raw);
  std::vector<double> v(c.d);
  if (o.output == "csv") {
    std::string s = "index,x,y\n";
    for (std::size_t i = 0; i < dk_hull_size(raw); ++i) {
      dk_hull_vertex(raw, i, v.data());
      s += std::to_string(dk_hull_index(raw, i)) + "," + g17(v[0]) + "," + g17(v[1]) + "\n";
    }
    return s;
  }
  ordered_json j = header("hull", c);
  j.erase("method");
  ordered_json verts = ordered_json::array(), idx = ordered_json::array();
  for (std::size_t i = 0; i < dk_hull_size(raw); ++i) {
    dk_hull_vertex(raw, i, v.data());
    verts.push_back(v);
    idx.push_back(dk_hull_index(raw, i));
  }
  j["vertices"] = std::move(verts);
  j["indices"] = std::move(idx);
  return j.dump() + "\n";
}

// Engine against brute-force oracle at seeded query points drawn from the
// data bounding box widened by 10% on each side.
std::string cmd_audit(const Options& o) {
  Context c = load(o);
  if (o.queries < 1) raise(DK_ERR_PARSE, "bad_argument", "--queries must be positive");
  std::vector<double> lo(c.d, INFINITY), hi(c.d, -INFINITY), p(c.d);
  for (std::size_t i = 0; i < c.n; ++i) {
    dk_dataset_point(c.ds.get(), i, p.data());
    for (std::size_t k = 0; k < c.d; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::vector<double>> queries;
  for (int q = 0; q < o.queries; ++q) {
    for (std::size_t k = 0; k < c.d; ++k) {
      const double w = hi[k] - lo[k];
      p[k] = lo[k] - 0.1 * w + 1.2 * w * unif(rng);
    }
    queries.push_back(p);
  }
  const dk_method_kind kind = c.method.kind;
  if (kind != DK_HALFSPACE && kind != DK_ZONOID && kind != DK_PROJECTION)
    raise(DK_ERR_PRECONDITION, "invalid_method", "audit covers halfspace, zonoid and projection");
  ordered_json j = header("audit", c);
  if (kind == DK_PROJECTION) j["grid"] = o.grid;
  ordered_json rows = ordered_json::array();
  double worst = 0.0;
  for (const auto& x : queries) {
    dk_depth_result r{};
    check(dk_depth(c.ds.get(), &c.method, x.data(), nullptr, &r));
    double ref = 0.0;
    if (kind == DK_HALFSPACE) {
      check(dk_oracle_halfspace_2d(c.ds.get(), x.data(), &ref));
    } else if (kind == DK_ZONOID) {
      check(dk_oracle_zonoid_bisection(c.ds.get(), x.data(), 1e-10, &ref));
    } else {
      double outl = 0.0;
      check(dk_oracle_projection_grid(c.ds.get(), x.data(), o.grid, &outl));
      ref = 1.0 / (1.0 + outl);
    }
    const double diff = std::abs(r.value - ref);
    worst = std::max(worst, diff);
    rows.push_back({{"point", x}, {"engine", r.value}, {"oracle", ref}, {"abs_diff", diff}});
  }
  j["rows"] = std::move(rows);
  j["max_abs_diff"] = worst;
  return j.dump() + "\n";
}

std::string cmd_profile(const Options& o) {
  Context c = load(o);
  if (o.direction.empty()) raise(DK_ERR_PARSE, "bad_argument", "--direction is required");
  const auto u = parse_point(o.direction, c, "direction");
  EvaluatorPtr ev = evaluator(c, o);
  dk_linear_tail_result t{};
  check(dk_linear_tail(ev.get(), u.data(), o.lambda_max * dk_dataset_spread(c.ds.get()),
                       o.samples, o.rel_tol, &t));
  ordered_json j = header("profile", c);
  j["center"] = center_of(ev.get(), c.d);
  j["direction"] = u;
  j["ell_hat"] = t.ell_hat;
  j["a_hat"] = t.a_hat;
  j["b_hat"] = t.b_hat;
  j["residual"] = t.residual;
  j["rel_residual"] = t.rel_residual;
  return j.dump() + "\n";
}

std::string error_line(int code, const std::string& kind, const std::string& message) {
  ordered_json e;
  e["schema_version"] = kSchemaVersion;
  e["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
  return e.dump() + "\n";
}

}  // namespace

Output run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Multivariate statistical depth, medians and depth contours", "depthkit"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--data", o.data, "CSV file of observations")->required();
    s->add_flag("--has-header", o.has_header, "First non-comment line is a header");
    s->add_option("--columns", o.columns, "Comma-separated column names or 0-based indices");
    s->add_option("--row-limit", o.row_limit, "Read at most this many rows");
    s->add_option("--method", o.method,
                  "mahalanobis|projection|halfspace|zonoid|extended_halfspace|extended_zonoid");
    s->add_option("--budget", o.budget, "Direction budget (0: method default)");
    s->add_option("--seed", o.seed, "Seed for randomized steps");
  };
  auto centered = [&](CLI::App* s) {
    s->add_option("--center", o.center, "Contour center: 'mean' or x,y,...");
  };
  auto traced = [&](CLI::App* s) {
    s->add_option("--taus", o.taus, "Comma-separated levels; a/b and the symbol n allowed");
    s->add_option("--rays", o.rays, "Rays per contour (>= 8)");
    s->add_option("--tol", o.tol, "Bisection accuracy in units of the data spread");
  };

  auto* depth = app.add_subcommand("depth", "Depth of one point");
  common(depth);
  depth->add_option("--point", o.point, "'mean' or x,y,...");
  depth->add_option("--center", o.center, "Extended halfspace center");

  auto* median = app.add_subcommand("median", "Projection or halfspace median");
  common(median);
  median->add_option("--tol", o.median_tol, "Simplex-size stopping rule in spread units");

  auto* contour = app.add_subcommand("contour", "Depth contours by radial bisection");
  common(contour);
  centered(contour);
  traced(contour);
  contour->add_option("--output", o.output, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* similarity = app.add_subcommand("similarity", "Per-ray collinearity of contours");
  common(similarity);
  centered(similarity);
  traced(similarity);
  similarity->add_option("--rel-tol", o.rel_tol, "Relative residual tolerance");
  similarity->add_option("--tau-star", o.tau_star, "auto|none|<value>");

  auto* hull = app.add_subcommand("hull", "2-D convex hull");
  common(hull);
  hull->add_option("--output", o.output, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* audit = app.add_subcommand("audit", "Engine against brute-force oracles");
  common(audit);
  audit->add_option("--queries", o.queries, "Number of seeded query points");
  audit->add_option("--grid", o.grid, "Angular grid of the projection oracle");

  auto* profile = app.add_subcommand("profile", "Linear tail of 1/depth - 1 along a ray");
  common(profile);
  centered(profile);
  profile->add_option("--direction", o.direction, "x,y,...")->required();
  profile->add_option("--lambda-max", o.lambda_max, "Ray length in units of the data spread");
  profile->add_option("--samples", o.samples, "Profile samples");
  profile->add_option("--rel-tol", o.rel_tol, "Relative residual tolerance");

  Output result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.code = DK_ERR_PARSE;
    result.err = error_line(DK_ERR_PARSE, "usage", e.what());
    return result;
  }

  try {
    if (depth->parsed()) result.out = cmd_depth(o);
    else if (median->parsed()) result.out = cmd_median(o);
    else if (contour->parsed()) result.out = cmd_contour(o);
    else if (similarity->parsed()) result.out = cmd_similarity(o);
    else if (hull->parsed()) result.out = cmd_hull(o);
    else if (audit->parsed()) result.out = cmd_audit(o);
    else if (profile->parsed()) result.out = cmd_profile(o);
  } catch (const Failure& f) {
    result.code = f.code;
    result.err = error_line(f.code, f.kind, f.message);
  } catch (const std::exception& e) {
    result.code = DK_ERR_INTERNAL;
    result.err = error_line(DK_ERR_INTERNAL, "internal", e.what());
  }
  return result;
}

}  // namespace depthkit::cli
