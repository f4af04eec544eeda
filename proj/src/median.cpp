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

#include "depthkit/median.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "depthkit/univariate.hpp"

namespace depthkit {

Point sample_mean(const Dataset& dataset) { return dataset.mean(); }

namespace {

struct NelderMeadRun {
  Point x;
  double value = 0.0;
  double size = 0.0;
  bool converged = false;
};

template <typename F>
NelderMeadRun nelder_mead(F&& f, const Point& start, double step, double tol, int max_iter) {
  const Eigen::Index d = start.size();
  std::vector<Point> v(static_cast<std::size_t>(d + 1), start);
  std::vector<double> fv(static_cast<std::size_t>(d + 1));
  for (Eigen::Index i = 0; i < d; ++i) v[i + 1][i] += step;
  for (std::size_t i = 0; i < v.size(); ++i) fv[i] = f(v[i]);

  std::vector<std::size_t> order(v.size());
  NelderMeadRun run;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    double size = 0.0;
    for (const Point& p : v) size = std::max(size, (p - v[best]).norm());
    if (size < tol) {
      run = {v[best], fv[best], size, true};
      return run;
    }
    Point centroid = Point::Zero(d);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i != worst) centroid += v[i];
    }
    centroid /= static_cast<double>(d);

    const Point xr = centroid + (centroid - v[worst]);
    const double fr = f(xr);
    if (fr < fv[best]) {
      const Point xe = centroid + 2.0 * (centroid - v[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        v[worst] = xe;
        fv[worst] = fe;
      } else {
        v[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      v[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    const Point xc = outside ? Point(centroid + 0.5 * (xr - centroid))
                             : Point(centroid + 0.5 * (v[worst] - centroid));
    const double fc = f(xc);
    if (fc < (outside ? fr : fv[worst])) {
      v[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i == best) continue;
      v[i] = v[best] + 0.5 * (v[i] - v[best]);
      fv[i] = f(v[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  double size = 0.0;
  for (const Point& p : v) size = std::max(size, (p - v[best]).norm());
  run = {v[best], fv[best], size, false};
  return run;
}

bool lexicographically_less(const Point& a, const Point& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Point coordinatewise_median(const Dataset& dataset) {
  Point m(dataset.dim());
  for (Eigen::Index j = 0; j < dataset.dim(); ++j) {
    const Eigen::VectorXd col = dataset.points().col(j);
    m[j] = median(Sample1D(std::vector<double>(col.data(), col.data() + col.size())));
  }
  return m;
}

std::string format_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

}  // namespace

MedianResult projection_median(const Dataset& dataset, double tol, int budget, RngSeed seed) {
  if (!(tol > 0.0)) throw precondition_error("bad_tolerance", "median tolerance must be positive");
  const Eigen::Index d = dataset.dim();
  if (d == 1) {
    const Eigen::VectorXd col = dataset.points().col(0);
    const Sample1D sample(std::vector<double>(col.data(), col.data() + col.size()));
    const double med = median(sample);
    if (!(mad(sample) > 0.0)) {
      throw precondition_error("degenerate_scale", "MAD is zero; projection depth is undefined");
    }
    return {Point::Constant(1, med), 1.0, 0.0};
  }
  if (budget <= 0) budget = default_budget(static_cast<int>(d));
  const ProjectionOutlyingness outlying(dataset, budget, seed);
  auto objective = [&](const Point& x) { return outlying(x); };

  const double scale = dataset.spread() > 0.0 ? dataset.spread() : 1.0;
  std::vector<Point> starts{coordinatewise_median(dataset), dataset.mean()};
  std::mt19937_64 rng(seed.value ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 8; ++k) {
    Point p = starts.front();
    for (Eigen::Index j = 0; j < d; ++j) p[j] += 0.1 * scale * gauss(rng);
    starts.push_back(p);
  }

  const int max_iter = 4000 * static_cast<int>(d);
  std::optional<NelderMeadRun> best;
  for (const Point& s : starts) {
    const NelderMeadRun run = nelder_mead(objective, s, 0.05 * scale, tol * scale, max_iter);
    if (!best || run.value < best->value ||
        (run.value == best->value && lexicographically_less(run.x, best->x))) {
      best = run;
    }
  }
  MedianResult result{best->x, 1.0 / (1.0 + best->value), best->size};
  if (!best->converged) {
    throw MedianConvergenceError(
        "projection median search did not converge; best iterate " + format_point(result.point),
        result);
  }
  return result;
}

MedianResult halfspace_median(const Dataset& dataset, int grid_budget, RngSeed seed) {
  const Eigen::Index n = dataset.size();
  const Eigen::Index d = dataset.dim();
  if (grid_budget < 1) throw precondition_error("bad_budget", "grid budget must be >= 1");
  if (d == 1) {
    std::vector<double> v(dataset.points().data(), dataset.points().data() + n);
    std::sort(v.begin(), v.end());
    const std::size_t lo = static_cast<std::size_t>((n - 1) / 2);
    const std::size_t hi = static_cast<std::size_t>(n / 2);
    const double mid = (v[lo] + v[hi]) / 2.0;
    const auto le = std::upper_bound(v.begin(), v.end(), mid) - v.begin();
    const auto ge = v.end() - std::lower_bound(v.begin(), v.end(), mid);
    return {Point::Constant(1, mid), static_cast<double>(std::min(le, ge)) / static_cast<double>(n), 0.0};
  }
  if (d != 2) {
    throw precondition_error("unsupported_dimension",
                             "halfspace median is only available for d <= 2");
  }

  const Eigen::MatrixXd& pts = dataset.points();
  const Point mean = dataset.mean();

  // Affine frame: columns are two data points (relative to the mean) spanning
  // the largest parallelogram among the first few points.
  const Eigen::Index probe = std::min<Eigen::Index>(n, 32);
  Eigen::Matrix2d frame = Eigen::Matrix2d::Identity();
  double best_det = 0.0;
  for (Eigen::Index i = 0; i < probe; ++i) {
    for (Eigen::Index j = i + 1; j < probe; ++j) {
      Eigen::Matrix2d f;
      f.col(0) = pts.row(i).transpose() - mean;
      f.col(1) = pts.row(j).transpose() - mean;
      const double det = std::abs(f.determinant());
      if (det > best_det) {
        best_det = det;
        frame = f;
      }
    }
  }
  if (!(best_det > 0.0)) {
    throw precondition_error("degenerate_dataset", "data do not span the plane");
  }
  const Eigen::Matrix2d inv_frame = frame.inverse();
  const Eigen::MatrixXd local = ((pts.rowwise() - mean.transpose()) * inv_frame.transpose());
  const Eigen::Vector2d box_lo = local.colwise().minCoeff().transpose();
  const Eigen::Vector2d box_hi = local.colwise().maxCoeff().transpose();
  auto to_world = [&](const Eigen::Vector2d& c) -> Point { return mean + frame * c; };

  const ConvexHull hull(dataset);
  auto depth = [&](const Point& y) { return halfspace_depth_2d(pts, y); };

  std::mt19937_64 rng(seed.value);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Candidate pass: data points plus jittered grid samples inside the hull.
  std::vector<Eigen::Vector2d> deepest_local;
  double tau_max = -1.0;
  auto offer = [&](const Eigen::Vector2d& c, double value) {
    if (value > tau_max) {
      tau_max = value;
      deepest_local.clear();
    }
    if (value == tau_max) deepest_local.push_back(c);
  };
  for (Eigen::Index i = 0; i < n; ++i) offer(local.row(i).transpose(), depth(pts.row(i).transpose()));
  const int side = std::max(1, static_cast<int>(std::ceil(std::sqrt(10.0 * grid_budget))));
  const Eigen::Vector2d extent = box_hi - box_lo;
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      const Eigen::Vector2d c(box_lo.x() + (a + unit(rng)) / side * extent.x(),
                              box_lo.y() + (b + unit(rng)) / side * extent.y());
      const Point y = to_world(c);
      if (hull.contains(y)) offer(c, depth(y));
    }
  }

  // Grow a sampling box around the deepest candidates until every hit stays
  // clear of its border, then average uniform hits inside it.
  Eigen::Vector2d lo = deepest_local.front(), hi = deepest_local.front();
  for (const auto& c : deepest_local) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  const Eigen::Vector2d cell = extent / side;
  lo -= cell;
  hi += cell;
  lo = lo.cwiseMax(box_lo);
  hi = hi.cwiseMin(box_hi);

  const int batch = std::max(1000, 10 * grid_budget);
  std::vector<Eigen::Vector2d> hits;
  // Returns true when a sample deeper than tau_max turned up; hits then hold
  // the samples at the new level.
  auto sample_box = [&](const Eigen::Vector2d& l, const Eigen::Vector2d& h) {
    hits.clear();
    bool deeper = false;
    for (int k = 0; k < batch; ++k) {
      const Eigen::Vector2d c(l.x() + unit(rng) * (h.x() - l.x()), l.y() + unit(rng) * (h.y() - l.y()));
      const double v = depth(to_world(c));
      if (v > tau_max) {
        tau_max = v;
        deeper = true;
        hits.clear();
      }
      if (v == tau_max) hits.push_back(c);
    }
    return deeper;
  };
  for (int round = 0; round < 24; ++round) {
    const bool deeper = sample_box(lo, hi);
    if (hits.empty()) break;
    if (deeper) {
      // Recenter on the deeper level and keep searching.
      deepest_local = hits;
      lo = hi = hits.front();
      for (const auto& c : hits) {
        lo = lo.cwiseMin(c);
        hi = hi.cwiseMax(c);
      }
      lo = (lo - cell).cwiseMax(box_lo);
      hi = (hi + cell).cwiseMin(box_hi);
      continue;
    }
    Eigen::Vector2d hlo = hits.front(), hhi = hits.front();
    for (const auto& c : hits) {
      hlo = hlo.cwiseMin(c);
      hhi = hhi.cwiseMax(c);
    }
    const Eigen::Vector2d margin = 2.0 * (hi - lo) / std::sqrt(static_cast<double>(batch));
    bool touches = false;
    for (int k = 0; k < 2; ++k) {
      if ((hlo[k] - lo[k] < margin[k] && lo[k] > box_lo[k]) ||
          (hi[k] - hhi[k] < margin[k] && hi[k] < box_hi[k])) {
        touches = true;
      }
    }
    if (!touches) {
      // Shrink to the hits plus a safety margin before the final average.
      const Eigen::Vector2d pad = 2.0 * margin;
      const Eigen::Vector2d new_lo = (hlo - pad).cwiseMax(lo);
      const Eigen::Vector2d new_hi = (hhi + pad).cwiseMin(hi);
      lo = new_lo;
      hi = new_hi;
      if (sample_box(lo, hi)) deepest_local = hits;
      break;
    }
    const Eigen::Vector2d grow = 0.5 * (hi - lo);
    lo = (lo - grow).cwiseMax(box_lo);
    hi = (hi + grow).cwiseMin(box_hi);
  }

  MedianResult result;
  result.attained_depth = tau_max;
  if (hits.size() < 2) {
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    for (const auto& p : deepest_local) c += p;
    c /= static_cast<double>(deepest_local.size());
    result.point = to_world(c);
    result.method_tolerance = 0.0;
    return result;
  }
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& p : hits) c += p;
  c /= static_cast<double>(hits.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : hits) cov += (p - c) * (p - c).transpose();
  cov /= static_cast<double>(hits.size() - 1);
  // Standard error of the centroid, mapped to world coordinates.
  const Eigen::Matrix2d se = frame * cov * frame.transpose() / static_cast<double>(hits.size());
  result.point = to_world(c);
  result.method_tolerance = std::sqrt(se.trace());
  return result;
}

CenteredDepth make_centered_depth(const Dataset& dataset, const DepthMethod& method,
                                  std::optional<Point> center) {
  if (center && center->size() != dataset.dim()) {
    throw precondition_error("dimension_mismatch", "center dimension does not match the dataset");
  }
  auto default_center = [&]() -> Point {
    switch (method.kind) {
      case DepthKind::kMahalanobis:
      case DepthKind::kZonoid:
      case DepthKind::kExtendedZonoid:
        return dataset.mean();
      case DepthKind::kProjection:
        return projection_median(dataset, 1e-9, method.budget.value_or(0), method.seed).point;
      case DepthKind::kHalfspace:
        if (dataset.dim() >= 3) return dataset.mean();
        return halfspace_median(dataset, 100, method.seed).point;
      case DepthKind::kExtendedHalfspace:
        return halfspace_median(dataset, 100, method.seed).point;
    }
    return dataset.mean();
  };
  Point c = center ? *center : default_center();
  if (method.kind == DepthKind::kExtendedHalfspace) {
    return {DepthEvaluator(dataset, method, c), c};
  }
  return {DepthEvaluator(dataset, method), c};
}

}  // namespace depthkit
