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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "depthkit/csv.hpp"
#include "depthkit/error.hpp"
#include "test_support.hpp"

using namespace depthkit;

namespace {
std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("depthkit_" + name);
  std::ofstream(path) << text;
  return path.string();
}

void expect_parse_error(const std::string& text, const CsvOptions& o, const std::string& needle) {
  try {
    parse_csv(text, o);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}
}  // namespace

TEST_CASE("headerless triangle") {
  const Dataset ds = ingest_csv(temp_file("tri.csv", "0,0\n1,0\n0,1"));
  CHECK(ds.size() == 3);
  CHECK(ds.dim() == 2);
  CHECK(ds.general_position());
}

TEST_CASE("named columns with header") {
  CsvOptions o;
  o.has_header = true;
  o.columns = {"RM", "dis"};
  const Dataset ds = parse_csv("crim,rm,\"dis\"\n1,6.5,4.0\n2,5.5,3.0\n3,7.0,1.0\n", o);
  CHECK(ds.dim() == 2);
  CHECK(ds.points()(1, 0) == 5.5);
  CHECK(ds.points()(2, 1) == 1.0);
}

TEST_CASE("index columns, comments, blank lines and CRLF") {
  CsvOptions o;
  o.columns = {"2", "0"};
  const Dataset ds = parse_csv("# comment\n1,2,3\r\n\n4,5,6\r\n7,8,10\n", o);
  CHECK(ds.size() == 3);
  CHECK(ds.points()(0, 0) == 3.0);
  CHECK(ds.points()(2, 1) == 7.0);
}

TEST_CASE("row limit truncates") {
  std::string text = "a,b\n";
  for (int i = 0; i < 506; ++i) text += std::to_string(i) + "," + std::to_string(i * i % 97) + "\n";
  CsvOptions o;
  o.has_header = true;
  o.row_limit = 65;
  CHECK(ingest_csv(temp_file("long.csv", text), o).size() == 65);
}

TEST_CASE("fixture reproduces the 65-row rm/dis table") {
  const Dataset ds = dktest::boston();
  CHECK(ds.size() == 65);
  CHECK(ds.dim() == 2);
  CHECK(ds.points()(0, 0) == 6.575);
  CHECK(ds.points()(0, 1) == 4.09);
}

TEST_CASE("errors carry line numbers") {
  expect_parse_error("1,2\n3,x\n", {}, "line 2");
  expect_parse_error("1,2\n3,4,5\n", {}, "line 2");
  expect_parse_error("\n\n", {}, "no data rows");
  CsvOptions named;
  named.columns = {"rm"};
  expect_parse_error("1,2\n", named, "header");
  CsvOptions missing;
  missing.has_header = true;
  missing.columns = {"zz"};
  expect_parse_error("a,b\n1,2\n", missing, "zz");
  CsvOptions idx;
  idx.columns = {"7"};
  expect_parse_error("1,2\n", idx, "out of range");
  try {
    ingest_csv("/nonexistent/file.csv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}
