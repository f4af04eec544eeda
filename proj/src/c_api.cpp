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

#include "depthkit/depthkit.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "depthkit/contour.hpp"
#include "depthkit/csv.hpp"
#include "depthkit/depth.hpp"
#include "depthkit/error.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/median.hpp"
#include "depthkit/oracle.hpp"

using namespace depthkit;

struct dk_dataset {
  Dataset ds;
};
struct dk_evaluator {
  CenteredDepth cd;
};
struct dk_contour {
  ContourPolygon c;
};
struct dk_similarity {
  SimilarityReport r;
};
struct dk_hull {
  HullPolygon2D h;
};

namespace {

thread_local std::string g_message;
thread_local std::string g_kind;

dk_status fail(dk_status s, std::string kind, std::string msg) {
  g_kind = std::move(kind);
  g_message = std::move(msg);
  return s;
}

template <typename F>
dk_status guard(F&& f) {
  try {
    f();
    g_kind.clear();
    g_message.clear();
    return DK_OK;
  } catch (const MedianConvergenceError& e) {
    return fail(DK_ERR_NUMERIC, e.kind(), e.what());
  } catch (const Error& e) {
    return fail(static_cast<dk_status>(static_cast<int>(e.code())), e.kind(), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DK_ERR_INTERNAL, "out_of_memory", "allocation failed");
  } catch (const std::exception& e) {
    return fail(DK_ERR_INTERNAL, "internal", e.what());
  }
}

dk_status null_arg() { return fail(DK_ERR_PRECONDITION, "null_argument", "null pointer argument"); }

Point to_point(const double* x, Eigen::Index d) { return Eigen::Map<const Eigen::VectorXd>(x, d); }

void copy_out(const Eigen::VectorXd& v, double* out) {
  std::memcpy(out, v.data(), sizeof(double) * static_cast<std::size_t>(v.size()));
}

DepthMethod to_method(const dk_method& m) {
  if (m.kind < DK_MAHALANOBIS || m.kind > DK_EXTENDED_ZONOID)
    throw precondition_error("invalid_method", "unknown depth method");
  DepthMethod out;
  out.kind = static_cast<DepthKind>(m.kind);
  if (m.budget > 0) out.budget = m.budget;
  out.seed = RngSeed{m.seed};
  return out;
}

}  // namespace

extern "C" {

const char* dk_last_error_message(void) { return g_message.c_str(); }
const char* dk_last_error_kind(void) { return g_kind.c_str(); }

dk_status dk_method_parse(const char* name, dk_method_kind* out) {
  if (!name || !out) return null_arg();
  static const struct {
    const char* a;
    const char* b;
    dk_method_kind k;
  } table[] = {
      {"mahalanobis", "md", DK_MAHALANOBIS},
      {"projection", "pd", DK_PROJECTION},
      {"halfspace", "hd", DK_HALFSPACE},
      {"zonoid", "zd", DK_ZONOID},
      {"extended_halfspace", "ehd", DK_EXTENDED_HALFSPACE},
      {"extended_zonoid", "ezd", DK_EXTENDED_ZONOID},
  };
  for (const auto& t : table) {
    if (std::strcmp(name, t.a) == 0 || std::strcmp(name, t.b) == 0) {
      *out = t.k;
      return DK_OK;
    }
  }
  return fail(DK_ERR_PARSE, "invalid_method", std::string("unknown depth method '") + name + "'");
}

const char* dk_method_name(dk_method_kind kind) {
  if (kind < DK_MAHALANOBIS || kind > DK_EXTENDED_ZONOID) return "";
  return to_string(static_cast<DepthKind>(kind)).data();
}

dk_status dk_dataset_create(const double* rows, size_t n, size_t dim, dk_dataset** out) {
  if (!rows || !out) return null_arg();
  return guard([&] {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < dim; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i * dim + j];
    *out = new dk_dataset{Dataset(std::move(m))};
  });
}

dk_status dk_dataset_load_csv(const char* path, int has_header, const char* columns,
                              long row_limit, dk_dataset** out) {
  if (!path || !out) return null_arg();
  return guard([&] {
    CsvOptions opt;
    opt.has_header = has_header != 0;
    if (columns && *columns) {
      std::stringstream ss(columns);
      std::string item;
      while (std::getline(ss, item, ',')) opt.columns.push_back(item);
    }
    if (row_limit > 0) opt.row_limit = row_limit;
    *out = new dk_dataset{ingest_csv(path, opt)};
  });
}

void dk_dataset_free(dk_dataset* ds) { delete ds; }
size_t dk_dataset_size(const dk_dataset* ds) { return static_cast<size_t>(ds->ds.size()); }
size_t dk_dataset_dim(const dk_dataset* ds) { return static_cast<size_t>(ds->ds.dim()); }
void dk_dataset_point(const dk_dataset* ds, size_t i, double* out) {
  copy_out(ds->ds.point(static_cast<Eigen::Index>(i)), out);
}
void dk_dataset_mean(const dk_dataset* ds, double* out) { copy_out(ds->ds.mean(), out); }
double dk_dataset_spread(const dk_dataset* ds) { return ds->ds.spread(); }
int dk_dataset_general_position(const dk_dataset* ds, int* exhaustive) {
  if (exhaustive) *exhaustive = ds->ds.general_position_info().exhaustive ? 1 : 0;
  return ds->ds.general_position() ? 1 : 0;
}

dk_status dk_evaluator_create(const dk_dataset* ds, const dk_method* method, const double* center,
                              dk_evaluator** out) {
  if (!ds || !method || !out) return null_arg();
  return guard([&] {
    std::optional<Point> c;
    if (center) c = to_point(center, ds->ds.dim());
    *out = new dk_evaluator{make_centered_depth(ds->ds, to_method(*method), c)};
  });
}

void dk_evaluator_free(dk_evaluator* ev) { delete ev; }
void dk_evaluator_center(const dk_evaluator* ev, double* out) { copy_out(ev->cd.center, out); }

dk_status dk_evaluator_depth(const dk_evaluator* ev, const double* x, dk_depth_result* out) {
  if (!ev || !x || !out) return null_arg();
  return guard([&] {
    const DepthResult r = ev->cd.evaluator(to_point(x, ev->cd.center.size()));
    *out = {r.value, r.exact ? 1 : 0, r.budget_used};
  });
}

dk_status dk_depth(const dk_dataset* ds, const dk_method* method, const double* x,
                   const double* center, dk_depth_result* out) {
  if (!ds || !method || !x || !out) return null_arg();
  return guard([&] {
    const DepthMethod m = to_method(*method);
    std::optional<Point> c;
    if (center && m.kind == DepthKind::kExtendedHalfspace) c = to_point(center, ds->ds.dim());
    // Only extended halfspace depth needs a center; it defaults to the
    // halfspace median.
    if (!c && m.kind == DepthKind::kExtendedHalfspace)
      c = halfspace_median(ds->ds, 100, m.seed).point;
    DepthEvaluator ev(ds->ds, m, c);
    const DepthResult r = ev(to_point(x, ds->ds.dim()));
    *out = {r.value, r.exact ? 1 : 0, r.budget_used};
  });
}

dk_status dk_median(const dk_dataset* ds, dk_method_kind kind, double tol, int budget,
                    uint64_t seed, double* point, dk_median_result* out) {
  if (!ds || !point || !out) return null_arg();
  auto fill = [&](const MedianResult& m) {
    copy_out(m.point, point);
    *out = {m.attained_depth, m.method_tolerance};
  };
  return guard([&] {
    if (kind == DK_PROJECTION) {
      try {
        fill(projection_median(ds->ds, tol, budget, RngSeed{seed}));
      } catch (const MedianConvergenceError& e) {
        fill(e.best());
        throw;
      }
    } else if (kind == DK_HALFSPACE) {
      fill(halfspace_median(ds->ds, budget > 0 ? budget : 100, RngSeed{seed}));
    } else {
      throw precondition_error("invalid_method", "median is defined for projection or halfspace");
    }
  });
}

dk_status dk_contour_trace(const dk_evaluator* ev, double tau, int n_rays, double tol,
                           dk_contour** out) {
  if (!ev || !out) return null_arg();
  return guard([&] {
    *out = new dk_contour{trace_contour(ev->cd.evaluator, tau, ev->cd.center, n_rays, tol)};
  });
}

void dk_contour_free(dk_contour* c) { delete c; }
size_t dk_contour_size(const dk_contour* c) { return c->c.vertices.size(); }
size_t dk_contour_dim(const dk_contour* c) { return static_cast<size_t>(c->c.center.size()); }
double dk_contour_tau(const dk_contour* c) { return c->c.tau; }
void dk_contour_center(const dk_contour* c, double* out) { copy_out(c->c.center, out); }
void dk_contour_vertex(const dk_contour* c, size_t i, double* out) {
  copy_out(c->c.vertices[i], out);
}
void dk_contour_direction(const dk_contour* c, size_t i, double* out) {
  copy_out(c->c.directions[i], out);
}
double dk_contour_lambda(const dk_contour* c, size_t i) { return c->c.lambdas[i]; }

dk_status dk_contour_count_facets(const dk_contour* c, double angle_tol, int* out) {
  if (!c || !out) return null_arg();
  return guard([&] { *out = count_facets_2d(c->c, angle_tol); });
}

dk_status dk_linear_tail(const dk_evaluator* ev, const double* direction, double lambda_max,
                         int samples, double rel_tol, dk_linear_tail_result* out) {
  if (!ev || !direction || !out) return null_arg();
  return guard([&] {
    const Direction u(to_point(direction, ev->cd.center.size()));
    const RayProfile p = ray_profile(ev->cd.evaluator, ev->cd.center, u, lambda_max, samples);
    const LinearTail t = detect_linear_tail(p, rel_tol);
    *out = {t.ell_hat, t.a_hat, t.b_hat, t.residual, t.rel_residual};
  });
}

dk_status dk_estimate_tau_star(const dk_evaluator* ev, int n_rays, double lambda_max_spreads,
                               int samples, double rel_tol, double* tau_star, double* ell_hat) {
  if (!ev || !tau_star) return null_arg();
  return guard([&] {
    TauStarOptions opt;
    opt.n_rays = n_rays;
    opt.lambda_max_spreads = lambda_max_spreads;
    opt.samples = samples;
    opt.rel_tol = rel_tol;
    const TauStarEstimate e = estimate_tau_star(ev->cd.evaluator, ev->cd.center, opt);
    *tau_star = e.tau_star_hat;
    if (ell_hat) *ell_hat = e.ell_hat;
  });
}

dk_status dk_similarity_check(const dk_contour* const* contours, size_t count, double rel_tol,
                              const double* tau_star, dk_similarity** out) {
  if (!contours || !out) return null_arg();
  return guard([&] {
    std::vector<ContourPolygon> cs;
    for (size_t i = 0; i < count; ++i) {
      if (!contours[i]) throw precondition_error("null_argument", "null contour");
      cs.push_back(contours[i]->c);
    }
    if (cs.empty()) throw precondition_error("invalid_argument", "no contours");
    std::optional<double> ts;
    if (tau_star) ts = *tau_star;
    *out = new dk_similarity{similarity_check(cs, cs.front().center, rel_tol, ts)};
  });
}

void dk_similarity_free(dk_similarity* r) { delete r; }
int dk_similarity_pass(const dk_similarity* r) { return r->r.pass ? 1 : 0; }
size_t dk_similarity_size(const dk_similarity* r) { return r->r.per_ray.size(); }
double dk_similarity_residual(const dk_similarity* r, size_t i) {
  return r->r.per_ray[i].residual;
}
void dk_similarity_direction(const dk_similarity* r, size_t i, double* out) {
  copy_out(r->r.per_ray[i].direction, out);
}

dk_status dk_hull_2d(const dk_dataset* ds, dk_hull** out) {
  if (!ds || !out) return null_arg();
  return guard([&] { *out = new dk_hull{convex_hull_2d(ds->ds)}; });
}

void dk_hull_free(dk_hull* h) { delete h; }
size_t dk_hull_size(const dk_hull* h) { return h->h.vertices.size(); }
void dk_hull_vertex(const dk_hull* h, size_t i, double* out) { copy_out(h->h.vertices[i], out); }
size_t dk_hull_index(const dk_hull* h, size_t i) { return static_cast<size_t>(h->h.indices[i]); }

dk_status dk_oracle_halfspace_2d(const dk_dataset* ds, const double* x, double* out) {
  if (!ds || !x || !out) return null_arg();
  return guard([&] { *out = oracle::halfspace_bruteforce_2d(to_point(x, ds->ds.dim()), ds->ds); });
}

dk_status dk_oracle_projection_grid(const dk_dataset* ds, const double* x, int grid, double* out) {
  if (!ds || !x || !out) return null_arg();
  return guard(
      [&] { *out = oracle::projection_grid_oracle(to_point(x, ds->ds.dim()), ds->ds, grid); });
}

dk_status dk_oracle_zonoid_bisection(const dk_dataset* ds, const double* x, double tol,
                                     double* out) {
  if (!ds || !x || !out) return null_arg();
  return guard(
      [&] { *out = oracle::zonoid_bisection_oracle(to_point(x, ds->ds.dim()), ds->ds, tol); });
}

}  // extern "C"
