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

#include "depthkit/depth.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "depthkit/error.hpp"
#include "depthkit/linprog.hpp"
#include "depthkit/univariate.hpp"

namespace depthkit {

std::string_view to_string(DepthKind kind) {
  switch (kind) {
    case DepthKind::kMahalanobis: return "mahalanobis";
    case DepthKind::kProjection: return "projection";
    case DepthKind::kHalfspace: return "halfspace";
    case DepthKind::kZonoid: return "zonoid";
    case DepthKind::kExtendedHalfspace: return "extended_halfspace";
    case DepthKind::kExtendedZonoid: return "extended_zonoid";
  }
  return "unknown";
}

int default_budget(int d) { return 512 * d; }

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr int kRefineCandidates = 8;
constexpr double kAngleTol = 1e-10;

void require_dim(const Dataset& dataset, const Point& x) {
  if (x.size() != dataset.dim()) {
    throw precondition_error("dimension_mismatch", "query dimension does not match the dataset");
  }
  if (!x.allFinite()) throw precondition_error("non_finite", "query point is not finite");
}

// Angle between the lines spanned by two unit vectors, in [0, pi/2].
double line_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::acos(std::min(1.0, std::abs(a.dot(b))));
}

double sphere_spacing(int d, int count) {
  if (d <= 1) return 0.0;
  if (d == 2) return std::numbers::pi / count;
  // Half-sphere area divided among `count` caps, as a geodesic radius.
  const double area = std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
  return std::pow(area / count, 1.0 / (d - 1));
}

template <typename F>
double golden_max(F&& f, double a, double b) {
  double c = b - kGolden * (b - a);
  double e = a + kGolden * (b - a);
  double fc = f(c);
  double fe = f(e);
  double best = std::max(fc, fe);
  for (int it = 0; it < 80 && b - a > kAngleTol; ++it) {
    if (fc > fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
      best = std::max(best, fc);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + kGolden * (b - a);
      fe = f(e);
      best = std::max(best, fe);
    }
  }
  return best;
}

double zonoid_lp(const Eigen::MatrixXd& pts, const Point& x) {
  // max sum w_i  s.t.  sum w_i (X_i - x) = 0,  0 <= w_i <= 1;  depth = w*/n.
  const Eigen::Index n = pts.rows();
  LpProblem lp;
  lp.objective = -Eigen::VectorXd::Ones(n);
  lp.eq_matrix = (pts.rowwise() - x.transpose()).transpose();
  lp.eq_rhs = Eigen::VectorXd::Zero(pts.cols());
  lp.lower = Eigen::VectorXd::Zero(n);
  lp.upper = Eigen::VectorXd::Ones(n);
  const LpSolution sol = solve_lp(lp, 1e-10);
  if (sol.status != LpStatus::kOptimal) {
    throw numeric_error("solver_failure", "zonoid LP did not reach an optimum");
  }
  return std::clamp(sol.solution.sum() / static_cast<double>(n), 0.0, 1.0);
}

}  // namespace

// --- projection outlyingness ---------------------------------------------

ProjectionOutlyingness::ProjectionOutlyingness(const Dataset& dataset, int budget, RngSeed seed,
                                               bool refine)
    : points_(dataset.points()), refine_(refine) {
  if (budget < 1) throw precondition_error("bad_budget", "direction budget must be >= 1");
  prepare(random_directions(static_cast<int>(dataset.dim()), budget, seed));
}

ProjectionOutlyingness::ProjectionOutlyingness(const Dataset& dataset,
                                               std::vector<Direction> directions, bool refine)
    : points_(dataset.points()), refine_(refine) {
  if (directions.empty()) throw precondition_error("bad_budget", "direction set is empty");
  for (const auto& u : directions) {
    if (u.dim() != dataset.dim()) {
      throw precondition_error("dimension_mismatch", "direction dimension does not match the dataset");
    }
  }
  prepare(std::move(directions));
}

void ProjectionOutlyingness::prepare(std::vector<Direction> directions) {
  const Eigen::Index d = points_.cols();
  // Data confined to a proper affine subspace have zero MAD in the normal
  // directions, even when no sampled direction hits them exactly.
  if (d > 1) {
    const Eigen::MatrixXd centered = points_.rowwise() - points_.colwise().mean();
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(centered).singularValues();
    if (!(sv(d - 1) > 1e-12 * sv(0))) {
      throw precondition_error("degenerate_scale", "data do not span the space");
    }
  }
  const auto count = static_cast<Eigen::Index>(directions.size());
  dirs_.resize(count, d);
  med_.resize(static_cast<std::size_t>(count));
  mad_.resize(static_cast<std::size_t>(count));
  std::vector<double> scratch(static_cast<std::size_t>(points_.rows()));
  for (Eigen::Index k = 0; k < count; ++k) {
    dirs_.row(k) = directions[k].vector().transpose();
    Eigen::Map<Eigen::VectorXd>(scratch.data(), points_.rows()) = points_ * directions[k].vector();
    const Location loc = median_mad_inplace(scratch);
    if (!(loc.mad > 0.0)) {
      throw precondition_error("degenerate_scale",
                               "MAD of the projected data is zero in some direction");
    }
    med_[k] = loc.median;
    mad_[k] = loc.mad;
  }
  spacing_ = sphere_spacing(static_cast<int>(d), static_cast<int>(count));
}

double ProjectionOutlyingness::ratio(const Eigen::VectorXd& u, const Point& x,
                                     std::vector<double>& scratch) const {
  Eigen::Map<Eigen::VectorXd>(scratch.data(), points_.rows()) = points_ * u;
  const Location loc = median_mad_inplace(scratch);
  // A zero-scale direction off the covering set is skipped: it cannot lower
  // the bound.
  if (!(loc.mad > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::abs(u.dot(x) - loc.median) / loc.mad;
}

void ProjectionOutlyingness::refine_2d(const Point& x, double theta, double half_width,
                                       Detail& best, std::vector<double>& scratch) const {
  Eigen::VectorXd u(2);
  double arg = theta;
  auto f = [&](double t) {
    u << std::cos(t), std::sin(t);
    const double r = ratio(u, x, scratch);
    if (r > best.value) {
      best.value = r;
      arg = t;
    }
    return r;
  };
  const double before = best.value;
  golden_max(f, theta - half_width, theta + half_width);
  if (best.value > before) best.argbest = Eigen::Vector2d(std::cos(arg), std::sin(arg));
}

void ProjectionOutlyingness::refine_nd(const Point& x, Eigen::VectorXd u, double half_width,
                                       Detail& best, std::vector<double>& scratch) const {
  const Eigen::Index d = u.size();
  for (int pass = 0; pass < 2; ++pass) {
    const double hw = pass == 0 ? half_width : 0.25 * half_width;
    for (Eigen::Index j = 1; j < d; ++j) {
      const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(u).householderQ();
      const Eigen::VectorXd w = q.col(j);
      Eigen::VectorXd v(d);
      Eigen::VectorXd arg = u;
      double local = -std::numeric_limits<double>::infinity();
      auto f = [&](double phi) {
        v = std::cos(phi) * u + std::sin(phi) * w;
        v.normalize();
        const double r = ratio(v, x, scratch);
        if (r > local) {
          local = r;
          arg = v;
        }
        return r;
      };
      golden_max(f, -hw, hw);
      if (local > best.value) {
        best.value = local;
        best.argbest = arg;
      }
      u = arg;
    }
  }
}

ProjectionOutlyingness::Detail ProjectionOutlyingness::evaluate(const Point& x) const {
  if (x.size() != points_.cols()) {
    throw precondition_error("dimension_mismatch", "query dimension does not match the dataset");
  }
  Detail best;
  const Eigen::Index count = dirs_.rows();
  const Eigen::VectorXd proj = dirs_ * x;
  std::vector<double> ratios(static_cast<std::size_t>(count));
  for (Eigen::Index k = 0; k < count; ++k) {
    ratios[k] = std::abs(proj[k] - med_[k]) / mad_[k];
  }
  const auto top = std::max_element(ratios.begin(), ratios.end()) - ratios.begin();
  best.value = ratios[top];
  best.argbest = dirs_.row(top).transpose();
  if (!refine_ || points_.cols() == 1) return best;

  // Up to eight best covering directions that are not neighbours of an
  // already chosen one.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0);
  const std::size_t scan = std::min<std::size_t>(order.size(), 64);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(scan), order.end(),
                    [&](Eigen::Index a, Eigen::Index b) {
                      return ratios[a] != ratios[b] ? ratios[a] > ratios[b] : a < b;
                    });
  std::vector<Eigen::Index> chosen;
  for (std::size_t i = 0; i < scan && chosen.size() < kRefineCandidates; ++i) {
    const Eigen::VectorXd u = dirs_.row(order[i]).transpose();
    bool separated = true;
    for (Eigen::Index c : chosen) {
      if (line_angle(u, dirs_.row(c).transpose()) <= 2.0 * spacing_) {
        separated = false;
        break;
      }
    }
    if (separated) chosen.push_back(order[i]);
  }

  std::vector<double> scratch(static_cast<std::size_t>(points_.rows()));
  for (Eigen::Index c : chosen) {
    const Eigen::VectorXd u = dirs_.row(c).transpose();
    if (points_.cols() == 2) {
      refine_2d(x, std::atan2(u[1], u[0]), spacing_, best, scratch);
    } else {
      refine_nd(x, u, spacing_, best, scratch);
    }
  }
  return best;
}

double ProjectionOutlyingness::operator()(const Point& x) const { return evaluate(x).value; }

// --- halfspace -------------------------------------------------------------

double halfspace_depth_2d(const Eigen::MatrixXd& points, const Point& x) {
  const Eigen::Index n = points.rows();
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  int on_point = 0;
  std::vector<double> alpha;
  alpha.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double dx = points(i, 0) - x[0];
    const double dy = points(i, 1) - x[1];
    if (dx == 0.0 && dy == 0.0) {
      ++on_point;
    } else {
      double a = std::atan2(dy, dx);
      if (a < 0.0) a += kTwoPi;
      alpha.push_back(a);
    }
  }
  if (alpha.empty()) return 1.0;

  // The closed halfplane {u.(y - x) <= 0} holds the angles in an arc
  // [s, s + pi]. Its minimum count over s equals the minimum open-arc count
  // over the gaps between event angles: a point leaves at s = alpha and
  // enters at s = alpha - pi.
  struct Event {
    double pos;
    int delta;
  };
  std::vector<Event> events;
  events.reserve(2 * alpha.size());
  for (double a : alpha) {
    events.push_back({a, -1});
    double e = a - std::numbers::pi;
    if (e < 0.0) e += kTwoPi;
    events.push_back({e, +1});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& l, const Event& r) { return l.pos < r.pos; });
  const std::size_t m = events.size();

  // Start in the widest gap.
  std::size_t widest = m - 1;
  double widest_gap = events[0].pos + kTwoPi - events[m - 1].pos;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double g = events[i + 1].pos - events[i].pos;
    if (g > widest_gap) {
      widest_gap = g;
      widest = i;
    }
  }
  double s0 = events[widest].pos + widest_gap / 2.0;
  if (s0 >= kTwoPi) s0 -= kTwoPi;
  int count = 0;
  for (double a : alpha) {
    double rel = a - s0;
    if (rel < 0.0) rel += kTwoPi;
    if (rel > 0.0 && rel < std::numbers::pi) ++count;
  }
  int best = count;
  constexpr double kTie = 1e-12;
  std::size_t i = (widest + 1) % m;
  for (std::size_t processed = 0; processed < m;) {
    // Consume one group of (numerically) coincident events.
    double last = events[i].pos;
    do {
      count += events[i].delta;
      last = events[i].pos;
      i = (i + 1) % m;
      ++processed;
      double gap = events[i].pos - last;
      if (gap < 0.0) gap += kTwoPi;
      if (processed >= m || gap > kTie) break;
    } while (true);
    best = std::min(best, count);
  }
  return static_cast<double>(best + on_point) / static_cast<double>(n);
}

namespace {

double halfspace_depth_1d(const Eigen::MatrixXd& points, double x) {
  const Eigen::Index n = points.rows();
  Eigen::Index le = 0, ge = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (points(i, 0) <= x) ++le;
    if (points(i, 0) >= x) ++ge;
  }
  return static_cast<double>(std::min(le, ge)) / static_cast<double>(n);
}

}  // namespace

// --- evaluator --------------------------------------------------------------

struct DepthEvaluator::State {
  Dataset dataset;
  DepthMethod method;
  std::optional<Point> center;
  ConvexHull hull;
  Eigen::LLT<Eigen::MatrixXd> cov_factor;
  std::optional<ProjectionOutlyingness> outlyingness;
  // Sampled halfspace directions (d >= 3) and the sorted data projections.
  Eigen::MatrixXd hs_dirs;
  std::vector<std::vector<double>> hs_sorted;
  int budget = 0;

  State(const Dataset& ds, DepthMethod m, std::optional<Point> c)
      : dataset(ds), method(m), center(std::move(c)), hull(ds) {}
};

namespace {

double sampled_halfspace(const Eigen::MatrixXd& dirs, const std::vector<std::vector<double>>& sorted,
                         const Point& x, Eigen::Index n) {
  const Eigen::VectorXd proj = dirs * x;
  Eigen::Index best = n;
  for (Eigen::Index k = 0; k < dirs.rows(); ++k) {
    const auto& s = sorted[k];
    const auto le = std::upper_bound(s.begin(), s.end(), proj[k]) - s.begin();
    const auto ge = s.end() - std::lower_bound(s.begin(), s.end(), proj[k]);
    best = std::min<Eigen::Index>(best, std::min(le, ge));
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

}  // namespace

DepthEvaluator::DepthEvaluator(const Dataset& dataset, DepthMethod method, std::optional<Point> center)
    : state_(std::make_unique<State>(dataset, method, std::move(center))) {
  State& s = *state_;
  const int d = static_cast<int>(dataset.dim());
  if (method.budget && *method.budget < 1) {
    throw precondition_error("bad_budget", "direction budget must be >= 1");
  }
  s.budget = method.budget.value_or(default_budget(d));

  switch (method.kind) {
    case DepthKind::kMahalanobis: {
      const Eigen::MatrixXd centered = dataset.points().rowwise() - dataset.mean().transpose();
      const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(dataset.size());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
      const double lo = eig.eigenvalues().minCoeff();
      const double hi = eig.eigenvalues().maxCoeff();
      if (!(lo > 0.0) || hi / lo >= 1e12) {
        throw precondition_error("singular_covariance", "sample covariance is singular");
      }
      s.cov_factor.compute(cov);
      break;
    }
    case DepthKind::kProjection:
      s.outlyingness.emplace(dataset, s.budget, method.seed);
      break;
    case DepthKind::kHalfspace:
    case DepthKind::kExtendedHalfspace:
      if (d >= 3) {
        const auto dirs = random_directions(d, s.budget, method.seed);
        s.hs_dirs.resize(s.budget, d);
        s.hs_sorted.resize(dirs.size());
        for (std::size_t k = 0; k < dirs.size(); ++k) {
          s.hs_dirs.row(static_cast<Eigen::Index>(k)) = dirs[k].vector().transpose();
          const Eigen::VectorXd p = dataset.points() * dirs[k].vector();
          s.hs_sorted[k].assign(p.data(), p.data() + p.size());
          std::sort(s.hs_sorted[k].begin(), s.hs_sorted[k].end());
        }
      }
      if (method.kind == DepthKind::kExtendedHalfspace) {
        if (!s.center) {
          throw precondition_error("missing_center",
                                   "extended halfspace depth needs the halfspace median");
        }
        if (s.center->size() != dataset.dim() || !s.hull.strictly_inside(*s.center)) {
          throw precondition_error("center_not_interior",
                                   "halfspace median must lie strictly inside the convex hull");
        }
      }
      break;
    case DepthKind::kZonoid:
      break;
    case DepthKind::kExtendedZonoid:
      s.center = dataset.mean();
      if (!s.hull.strictly_inside(*s.center)) {
        throw precondition_error("center_not_interior",
                                 "sample mean lies on the hull boundary; extended zonoid depth undefined");
      }
      break;
  }
}

DepthEvaluator::~DepthEvaluator() = default;
DepthEvaluator::DepthEvaluator(DepthEvaluator&&) noexcept = default;
DepthEvaluator& DepthEvaluator::operator=(DepthEvaluator&&) noexcept = default;

const Dataset& DepthEvaluator::dataset() const noexcept { return state_->dataset; }
const DepthMethod& DepthEvaluator::method() const noexcept { return state_->method; }
const std::optional<Point>& DepthEvaluator::center() const noexcept { return state_->center; }
const ConvexHull& DepthEvaluator::hull() const { return state_->hull; }

DepthResult DepthEvaluator::operator()(const Point& x) const {
  const State& s = *state_;
  const Dataset& ds = s.dataset;
  require_dim(ds, x);
  const Eigen::Index n = ds.size();
  const Eigen::Index d = ds.dim();
  const double inv_n = 1.0 / static_cast<double>(n);

  auto halfspace = [&]() -> DepthResult {
    if (d == 1) return {halfspace_depth_1d(ds.points(), x[0]), true, 0};
    if (d == 2) return {halfspace_depth_2d(ds.points(), x), true, 0};
    return {sampled_halfspace(s.hs_dirs, s.hs_sorted, x, n), false, s.budget};
  };
  // Outside the hull both extended depths continue as (lambda_boundary /
  // lambda) / n along the ray from their center.
  // The side of the boundary is decided by the same exit distance, so the two
  // branches meet exactly at 1/n.
  auto continuation = [&]() -> std::optional<double> {
    const Point diff = x - *s.center;
    const double lambda = diff.norm();
    if (!(lambda > 0.0)) return std::nullopt;
    const RayHit hit = s.hull.ray_exit(*s.center, Direction(diff));
    if (lambda <= hit.lambda_boundary) return std::nullopt;
    return hit.lambda_boundary / lambda * inv_n;
  };

  switch (s.method.kind) {
    case DepthKind::kMahalanobis: {
      const Eigen::VectorXd diff = x - ds.mean();
      const double q = std::max(0.0, diff.dot(s.cov_factor.solve(diff)));
      return {1.0 / (1.0 + std::sqrt(q)), true, 0};
    }
    case DepthKind::kProjection: {
      const double o = (*s.outlyingness)(x);
      return {1.0 / (1.0 + o), d == 1, d == 1 ? 0 : s.outlyingness->budget()};
    }
    case DepthKind::kHalfspace:
      return halfspace();
    case DepthKind::kZonoid:
      if (!s.hull.contains(x)) return {0.0, true, 0};
      return {std::max(zonoid_lp(ds.points(), x), inv_n), true, 0};
    case DepthKind::kExtendedHalfspace: {
      if (const auto c = continuation()) return {*c, true, 0};
      DepthResult r = halfspace();
      // Inside the closed hull the depth is at least 1/n; this only acts in
      // the tolerance band around the boundary.
      r.value = std::max(r.value, inv_n);
      return r;
    }
    case DepthKind::kExtendedZonoid:
      if (const auto c = continuation()) return {*c, true, 0};
      return {std::max(zonoid_lp(ds.points(), x), inv_n), true, 0};
  }
  return {};
}

// --- free functions ---------------------------------------------------------

DepthResult mahalanobis_depth(const Point& x, const Dataset& dataset) {
  return DepthEvaluator(dataset, {DepthKind::kMahalanobis, {}, {}})(x);
}

double outlyingness(const Point& x, const Dataset& dataset, int budget, RngSeed seed) {
  require_dim(dataset, x);
  return ProjectionOutlyingness(dataset, budget, seed)(x);
}

DepthResult projection_depth(const Point& x, const Dataset& dataset, int budget, RngSeed seed) {
  return DepthEvaluator(dataset, {DepthKind::kProjection, budget, seed})(x);
}

DepthResult halfspace_depth(const Point& x, const Dataset& dataset, int budget, RngSeed seed) {
  DepthMethod m{DepthKind::kHalfspace, {}, seed};
  if (budget > 0) m.budget = budget;
  return DepthEvaluator(dataset, m)(x);
}

DepthResult zonoid_depth(const Point& x, const Dataset& dataset) {
  return DepthEvaluator(dataset, {DepthKind::kZonoid, {}, {}})(x);
}

DepthResult extended_halfspace_depth(const Point& x, const Dataset& dataset, const Point& median,
                                     int budget, RngSeed seed) {
  DepthMethod m{DepthKind::kExtendedHalfspace, {}, seed};
  if (budget > 0) m.budget = budget;
  return DepthEvaluator(dataset, m, median)(x);
}

DepthResult extended_zonoid_depth(const Point& x, const Dataset& dataset) {
  return DepthEvaluator(dataset, {DepthKind::kExtendedZonoid, {}, {}})(x);
}

}  // namespace depthkit
