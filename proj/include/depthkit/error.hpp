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

#include <stdexcept>
#include <string>

namespace depthkit {

/// Error categories. The numeric values double as CLI exit codes and as the
/// status codes of the C API.
enum class ErrorCode : int {
  kParse = 2,
  kPrecondition = 3,
  kNumeric = 4,
  kNoLinearTail = 5,
};

/// Base exception for every failure raised by the library. `kind` is a short
/// machine-readable tag ("degenerate_scale", "singular_covariance", ...)
/// distinguishing errors that share a category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string kind, const std::string& message)
      : std::runtime_error(message), code_(code), kind_(std::move(kind)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCode code_;
  std::string kind_;
};

inline Error parse_error(std::string kind, const std::string& msg) {
  return {ErrorCode::kParse, std::move(kind), msg};
}
inline Error precondition_error(std::string kind, const std::string& msg) {
  return {ErrorCode::kPrecondition, std::move(kind), msg};
}
inline Error numeric_error(std::string kind, const std::string& msg) {
  return {ErrorCode::kNumeric, std::move(kind), msg};
}

}  // namespace depthkit
