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

#pragma once

#include <span>
#include <vector>

namespace depthkit {

/// Nonempty sample of finite reals.
class Sample1D {
 public:
  /// Throws on empty input or NaN/inf.
  explicit Sample1D(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Med(Z) = (Z_(floor((n+1)/2)) + Z_(floor((n+2)/2))) / 2 over order statistics.
double median(const Sample1D& sample);
/// Med{|Z_i - Med(Z)|}.
double mad(const Sample1D& sample);
/// |x - Med| / MAD. Throws a degenerate-scale error when MAD = 0.
double outlyingness_1d(double x, const Sample1D& sample);

/// Median and MAD of a projected sample, computed together.
struct Location {
  double median = 0.0;
  double mad = 0.0;
};

/// Unchecked kernel shared by the depth code: `scratch` is reordered in place
/// and must be nonempty.
Location median_mad_inplace(std::span<double> scratch);

}  // namespace depthkit
