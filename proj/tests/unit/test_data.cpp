// Copyright 2026 The mfopt Authors
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


#include <sstream>

#include "doctest.h"
#include "mfopt/data.hpp"
#include "mfopt/error.hpp"
#include "support.hpp"

using namespace mfopt;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no mfopt::Error thrown");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("load_dataset skips comments and orders numeric groups by value") {
  std::istringstream in(
      "# produced by a scorer\n"
      "id,score,label,group\n"
      "\n"
      "a,0.1,0,10\n"
      "b,0.9,1,2\n"
      "c,0.5,1,10\n");
  const Dataset d = load_dataset(in);
  CHECK(d.group_names == std::vector<std::string>{"2", "10"});
  REQUIRE(d.observations.size() == 3);
  CHECK(d.observations[0] == Observation{0.1, 0, 1});
  CHECK(d.observations[1] == Observation{0.9, 1, 0});
  CHECK(d.cells[2][0] == "c");
}

TEST_CASE("load_dataset honors a custom schema") {
  std::istringstream in("p;y;a\n0.2;1;x\n0.4;0;y\n");
  CsvSchema schema{"p", "y", "a", ';'};
  const Dataset d = load_dataset(in, schema);
  CHECK(d.group_names == std::vector<std::string>{"x", "y"});
  CHECK(d.observations[1].score == doctest::Approx(0.4));
}

TEST_CASE("load_dataset error categories") {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return load_dataset(in);
  };
  CHECK(code_of([&] { load(""); }) == ErrorCode::kSchema);
  CHECK(code_of([&] { load("score,label\n0.1,0\n"); }) == ErrorCode::kSchema);
  CHECK(code_of([&] { load("score,label,group\n1.2,0,a\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([&] { load("score,label,group\nabc,0,a\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([&] { load("score,label,group\n0.2,2,a\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([&] { load("score,label,group\n0.2,1\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([&] { load("score,label,group\n0.2,1,\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([] { load_dataset(std::filesystem::path("/nonexistent/x.csv")); }) ==
        ErrorCode::kIo);
}

TEST_CASE("write_dataset round-trips and appends columns") {
  std::istringstream in("score,label,group\n0.25,0,a\n0.75,1,b\n");
  const Dataset d = load_dataset(in);
  std::ostringstream out;
  std::vector<std::string> extra{"new_bin"};
  std::vector<std::vector<std::string>> cells{{"0"}, {"1"}};
  write_dataset(out, d, extra, cells);
  CHECK(out.str() == "score,label,group,new_bin\n0.25,0,a,0\n0.75,1,b,1\n");
}

TEST_CASE("bin membership is half-open except the last bin") {
  const BinSpec spec = BinSpec::from_edges({0.0, 0.5, 1.0});
  CHECK(spec.midpoints == std::vector<double>{0.25, 0.75});
  CHECK(spec.bin_of(0.0) == 0);
  CHECK(spec.bin_of(0.4999) == 0);
  CHECK(spec.bin_of(0.5) == 1);
  CHECK(spec.bin_of(1.0) == 1);
  CHECK(code_of([] { BinSpec::from_edges({0.0, 0.5, 0.5, 1.0}); }) == ErrorCode::kBinning);
}

TEST_CASE("quantile_bin on the TINY-A scores splits at 0.5") {
  const Dataset d = load_dataset(std::filesystem::path(MFOPT_FIXTURE_DIR) / "tiny_a.csv");
  const BinSpec spec = quantile_bin(d.observations, 2);
  CHECK(spec.edges == std::vector<double>{0.0, 0.5, 1.0});
  const BinStats stats = compute_bin_stats(d.observations, spec, d.num_groups(), d.group_names);
  const BinStats expected = testing::tiny_a_stats();
  CHECK(stats.count == expected.count);
  CHECK(stats.positives == expected.positives);
  CHECK(stats.total() == 40.0);
  CHECK(stats.group_positives(0) == 10.0);
  CHECK(stats.group_negatives(1) == 10.0);
}

TEST_CASE("quantile_bin reports the achievable bin count") {
  std::vector<Observation> obs{{0.1, 0, 0}, {0.1, 1, 1}, {0.3, 0, 0}, {0.3, 1, 1}};
  CHECK(achievable_bins(obs) == 2);
  try {
    quantile_bin(obs, 3);
    FAIL("expected a binning error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBinning);
    CHECK(std::string(e.what()).find("achievable bins = 2") != std::string::npos);
  }
  CHECK(quantile_bin(obs, 2).num_bins() == 2);
}

TEST_CASE("quantile_bin collapses tied quantiles instead of leaving empty bins") {
  std::vector<Observation> obs;
  for (int i = 0; i < 8; ++i) obs.push_back({0.5, i % 2, i % 2});
  obs.push_back({0.1, 0, 0});
  obs.push_back({0.9, 1, 1});
  const BinSpec spec = quantile_bin(obs, 3);
  CHECK(spec.num_bins() >= 2);
  const BinStats stats = compute_bin_stats(obs, spec, 2);
  for (int b = 0; b < stats.num_bins; ++b) {
    CHECK(stats.count[0][b] + stats.count[1][b] > 0.0);
  }
}

TEST_CASE("validate_overlap lists empty cells") {
  const BinStats stats = BinStats::from_counts({{3, 0, 2}, {1, 1, 1}}, {{1, 0, 1}, {0, 1, 0}});
  const OverlapReport report = validate_overlap(stats);
  CHECK_FALSE(report.ok);
  REQUIRE(report.empty_cells.size() == 1);
  CHECK(report.empty_cells[0] == std::pair<int, int>{1, 0});
  CHECK_FALSE(report.describe(stats).empty());
  CHECK(validate_overlap(testing::tiny_a_stats()).ok);
}

TEST_CASE("uniform_bins edges") {
  const BinSpec spec = uniform_bins(4);
  CHECK(spec.edges == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(spec.bin_of(0.74) == 2);
}
