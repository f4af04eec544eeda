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

#include "depthkit/univariate.hpp"

#include <algorithm>
#include <cmath>

#include "depthkit/error.hpp"

namespace depthkit {

namespace {

// Med of `v`, reordering it. Order statistics are 1-based in the formula, so
// ranks floor((n+1)/2) and floor((n+2)/2) map to 0-based (n-1)/2 and n/2.
double median_inplace(std::span<double> v) {
  const std::size_t n = v.size();
  const std::size_t lo = (n - 1) / 2;
  const std::size_t hi = n / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(hi), v.end());
  const double upper = v[hi];
  if (lo == hi) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(hi));
  return (lower + upper) / 2.0;
}

}  // namespace

Sample1D::Sample1D(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw precondition_error("empty_sample", "sample must be nonempty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw precondition_error("non_finite", "sample contains non-finite values");
  }
}

Location median_mad_inplace(std::span<double> scratch) {
  Location loc;
  loc.median = median_inplace(scratch);
  for (double& z : scratch) z = std::abs(z - loc.median);
  loc.mad = median_inplace(scratch);
  return loc;
}

double median(const Sample1D& sample) {
  std::vector<double> v(sample.values().begin(), sample.values().end());
  return median_inplace(v);
}

double mad(const Sample1D& sample) {
  std::vector<double> v(sample.values().begin(), sample.values().end());
  return median_mad_inplace(v).mad;
}

double outlyingness_1d(double x, const Sample1D& sample) {
  std::vector<double> v(sample.values().begin(), sample.values().end());
  const Location loc = median_mad_inplace(v);
  if (!(loc.mad > 0.0)) {
    throw precondition_error("degenerate_scale", "MAD is zero; outlyingness is undefined");
  }
  return std::abs(x - loc.median) / loc.mad;
}

}  // namespace depthkit
