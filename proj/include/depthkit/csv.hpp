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

#include <optional>
#include <string>
#include <vector>

#include "depthkit/core.hpp"

namespace depthkit {

struct CsvOptions {
  bool has_header = false;
  /// Column names (needs a header, case-insensitive) or 0-based indices.
  /// Empty selects every column.
  std::vector<std::string> columns;
  std::optional<long> row_limit;
};

/// Reads a comma-separated numeric table. Blank lines and lines starting with
/// '#' are skipped. Errors carry the 1-based line number.
Dataset ingest_csv(const std::string& path, const CsvOptions& options = {});
Dataset parse_csv(const std::string& text, const CsvOptions& options = {});

}  // namespace depthkit
