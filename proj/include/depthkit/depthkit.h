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

/* C interface to depthkit. Every call returns a dk_status; on failure the
 * thread-local dk_last_error_message() and dk_last_error_kind() describe it.
 * Points are arrays of `dim` doubles; datasets are row-major. */
#ifndef DEPTHKIT_DEPTHKIT_H_
#define DEPTHKIT_DEPTHKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DK_API __declspec(dllexport)
#else
#define DK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dk_status {
  DK_OK = 0,
  DK_ERR_INTERNAL = 1,
  DK_ERR_PARSE = 2,
  DK_ERR_PRECONDITION = 3,
  DK_ERR_NUMERIC = 4,
  DK_ERR_NO_LINEAR_TAIL = 5
} dk_status;

typedef enum dk_method_kind {
  DK_MAHALANOBIS = 0,
  DK_PROJECTION = 1,
  DK_HALFSPACE = 2,
  DK_ZONOID = 3,
  DK_EXTENDED_HALFSPACE = 4,
  DK_EXTENDED_ZONOID = 5
} dk_method_kind;

typedef struct dk_method {
  dk_method_kind kind;
  int budget; /* <= 0 selects the default */
  uint64_t seed;
} dk_method;

typedef struct dk_depth_result {
  double value;
  int exact;
  int budget_used;
} dk_depth_result;

typedef struct dk_median_result {
  double attained_depth;
  double method_tolerance;
} dk_median_result;

typedef struct dk_linear_tail_result {
  double ell_hat;
  double a_hat;
  double b_hat;
  double residual;
  double rel_residual;
} dk_linear_tail_result;

typedef struct dk_dataset dk_dataset;
typedef struct dk_evaluator dk_evaluator;
typedef struct dk_contour dk_contour;
typedef struct dk_similarity dk_similarity;
typedef struct dk_hull dk_hull;

DK_API const char* dk_last_error_message(void);
DK_API const char* dk_last_error_kind(void);

/* Accepts mahalanobis|md, projection|pd, halfspace|hd, zonoid|zd,
 * extended_halfspace|ehd, extended_zonoid|ezd. */
DK_API dk_status dk_method_parse(const char* name, dk_method_kind* out);
DK_API const char* dk_method_name(dk_method_kind kind);

/* Datasets */
DK_API dk_status dk_dataset_create(const double* rows, size_t n, size_t dim, dk_dataset** out);
/* `columns` is a comma-separated list of names or 0-based indices, or NULL
 * for all columns. row_limit <= 0 reads every row. */
DK_API dk_status dk_dataset_load_csv(const char* path, int has_header, const char* columns,
                                     long row_limit, dk_dataset** out);
DK_API void dk_dataset_free(dk_dataset* ds);
DK_API size_t dk_dataset_size(const dk_dataset* ds);
DK_API size_t dk_dataset_dim(const dk_dataset* ds);
DK_API void dk_dataset_point(const dk_dataset* ds, size_t i, double* out);
DK_API void dk_dataset_mean(const dk_dataset* ds, double* out);
DK_API double dk_dataset_spread(const dk_dataset* ds);
/* 1 when general position holds; *exhaustive is 0 when the check sampled. */
DK_API int dk_dataset_general_position(const dk_dataset* ds, int* exhaustive);

/* Depth evaluators bound to their method center. `center` may be NULL for
 * the method default. */
DK_API dk_status dk_evaluator_create(const dk_dataset* ds, const dk_method* method,
                                     const double* center, dk_evaluator** out);
DK_API void dk_evaluator_free(dk_evaluator* ev);
DK_API void dk_evaluator_center(const dk_evaluator* ev, double* out);
DK_API dk_status dk_evaluator_depth(const dk_evaluator* ev, const double* x, dk_depth_result* out);

/* One-shot depth. `center` is only used by extended halfspace depth. */
DK_API dk_status dk_depth(const dk_dataset* ds, const dk_method* method, const double* x,
                          const double* center, dk_depth_result* out);

/* kind is DK_PROJECTION or DK_HALFSPACE. For halfspace, `budget` is the grid
 * budget and `tol` is ignored. On non-convergence returns DK_ERR_NUMERIC and
 * still fills the best iterate. */
DK_API dk_status dk_median(const dk_dataset* ds, dk_method_kind kind, double tol, int budget,
                           uint64_t seed, double* point, dk_median_result* out);

/* Contours */
DK_API dk_status dk_contour_trace(const dk_evaluator* ev, double tau, int n_rays, double tol,
                                  dk_contour** out);
DK_API void dk_contour_free(dk_contour* c);
DK_API size_t dk_contour_size(const dk_contour* c);
DK_API size_t dk_contour_dim(const dk_contour* c);
DK_API double dk_contour_tau(const dk_contour* c);
DK_API void dk_contour_center(const dk_contour* c, double* out);
DK_API void dk_contour_vertex(const dk_contour* c, size_t i, double* out);
DK_API void dk_contour_direction(const dk_contour* c, size_t i, double* out);
DK_API double dk_contour_lambda(const dk_contour* c, size_t i);
DK_API dk_status dk_contour_count_facets(const dk_contour* c, double angle_tol, int* out);

DK_API dk_status dk_linear_tail(const dk_evaluator* ev, const double* direction,
                                double lambda_max, int samples, double rel_tol,
                                dk_linear_tail_result* out);
/* Projection evaluators only. lambda_max is given in units of the spread. */
DK_API dk_status dk_estimate_tau_star(const dk_evaluator* ev, int n_rays,
                                      double lambda_max_spreads, int samples, double rel_tol,
                                      double* tau_star, double* ell_hat);

/* `tau_star` may be NULL. */
DK_API dk_status dk_similarity_check(const dk_contour* const* contours, size_t count,
                                     double rel_tol, const double* tau_star,
                                     dk_similarity** out);
DK_API void dk_similarity_free(dk_similarity* r);
DK_API int dk_similarity_pass(const dk_similarity* r);
DK_API size_t dk_similarity_size(const dk_similarity* r);
DK_API double dk_similarity_residual(const dk_similarity* r, size_t i);
DK_API void dk_similarity_direction(const dk_similarity* r, size_t i, double* out);

/* 2-D hull, counter-clockwise. */
DK_API dk_status dk_hull_2d(const dk_dataset* ds, dk_hull** out);
DK_API void dk_hull_free(dk_hull* h);
DK_API size_t dk_hull_size(const dk_hull* h);
DK_API void dk_hull_vertex(const dk_hull* h, size_t i, double* out);
DK_API size_t dk_hull_index(const dk_hull* h, size_t i);

/* Brute-force references */
DK_API dk_status dk_oracle_halfspace_2d(const dk_dataset* ds, const double* x, double* out);
DK_API dk_status dk_oracle_projection_grid(const dk_dataset* ds, const double* x, int grid,
                                           double* out);
DK_API dk_status dk_oracle_zonoid_bisection(const dk_dataset* ds, const double* x, double tol,
                                            double* out);

#ifdef __cplusplus
}
#endif

#endif /* DEPTHKIT_DEPTHKIT_H_ */
