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

#include "depthkit/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "depthkit/error.hpp"

namespace depthkit {
namespace {

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string where(long line) { return "line " + std::to_string(line) + ": "; }

bool parse_index(const std::string& s, std::size_t& out) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    return false;
  out = std::stoul(s);
  return true;
}

}  // namespace

Dataset parse_csv(const std::string& text, const CsvOptions& options) {
  if (options.row_limit && *options.row_limit < 1)
    throw parse_error("invalid_argument", "row limit must be positive");
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  std::vector<std::size_t> selected;
  bool have_selection = false;
  std::size_t width = 0;
  std::vector<std::vector<double>> rows;

  auto resolve = [&](const std::vector<std::string>* header, long at) {
    if (options.columns.empty()) {
      for (std::size_t j = 0; j < width; ++j) selected.push_back(j);
    } else {
      for (const auto& c : options.columns) {
        std::size_t idx = 0;
        if (parse_index(c, idx)) {
          if (idx >= width)
            throw parse_error("bad_column", where(at) + "column index " + c + " out of range");
          selected.push_back(idx);
          continue;
        }
        if (!header)
          throw parse_error("bad_column", "column name '" + c + "' needs a header row");
        auto it = std::find_if(header->begin(), header->end(),
                               [&](const std::string& h) { return lower(h) == lower(trim(c)); });
        if (it == header->end())
          throw parse_error("bad_column", where(at) + "no column named '" + c + "'");
        selected.push_back(static_cast<std::size_t>(it - header->begin()));
      }
    }
    have_selection = true;
  };

  bool header_pending = options.has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split(line);
    if (header_pending) {
      width = cells.size();
      resolve(&cells, line_no);
      header_pending = false;
      continue;
    }
    if (!have_selection) {
      width = cells.size();
      resolve(nullptr, line_no);
    }
    if (cells.size() != width) {
      throw parse_error("ragged_row", where(line_no) + "expected " + std::to_string(width) +
                                          " fields, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (std::size_t j : selected) {
      const std::string& cell = cells[j];
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE ||
          !std::isfinite(v)) {
        throw parse_error("non_numeric", where(line_no) + "non-numeric cell '" + cell + "'");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
    if (options.row_limit && static_cast<long>(rows.size()) >= *options.row_limit) break;
  }
  if (rows.empty() || selected.empty()) throw parse_error("empty_selection", "no data rows selected");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(selected.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < selected.size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return Dataset(std::move(m));
}

Dataset ingest_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw parse_error("io_error", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), options);
}

}  // namespace depthkit
