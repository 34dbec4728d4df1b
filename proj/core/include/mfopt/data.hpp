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

#ifndef MFOPT_DATA_HPP_
#define MFOPT_DATA_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mfopt {

// One scored instance. `group` is the dense 0-based index into
// Dataset::group_names.
struct Observation {
  double score = 0.0;
  int label = 0;
  int group = 0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct CsvSchema {
  std::string score_column = "score";
  std::string label_column = "label";
  std::string group_column = "group";
  char delimiter = ',';
};

// Parsed delimiter-separated input. Raw cells are kept so transformed
// datasets can be written back in the input schema.
struct Dataset {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
  std::vector<Observation> observations;
  std::vector<std::string> group_names;
  CsvSchema schema;

  int num_groups() const { return static_cast<int>(group_names.size()); }
};

// Blank lines and lines starting with '#' are ignored.
Dataset load_dataset(std::istream& in, const CsvSchema& schema = {});
Dataset load_dataset(const std::filesystem::path& path,
                     const CsvSchema& schema = {});

// Writes header plus rows. Extra columns are appended after the original ones.
void write_dataset(std::ostream& out, const Dataset& data,
                   std::span<const std::string> extra_header = {},
                   std::span<const std::vector<std::string>> extra_cells = {});

// Bin boundaries over [0,1]. Membership is half-open [edges[b], edges[b+1])
// except the last bin, which is closed.
struct BinSpec {
  std::vector<double> edges;
  std::vector<double> midpoints;

  int num_bins() const { return static_cast<int>(midpoints.size()); }
  int bin_of(double score) const;

  static BinSpec from_edges(std::vector<double> edges);
  friend bool operator==(const BinSpec&, const BinSpec&) = default;
};

// Quantile discretization into at most `num_bins` nonempty bins. Throws
// Error(kBinning) when fewer distinct scores than bins exist; the message and
// `achievable_bins` report how many bins the data supports. Quantile ties can
// still collapse edges, in which case fewer than `num_bins` bins come back.
BinSpec quantile_bin(std::span<const Observation> observations, int num_bins);

// Fixed-width bins, used when re-auditing transformed scores.
BinSpec uniform_bins(int num_bins);

// Number of distinct score values; the most bins quantile_bin can produce.
int achievable_bins(std::span<const Observation> observations);

// Per-group, per-bin counts. Counts are real-valued so the same type carries
// expected-assignment statistics; loaded data always has integral counts.
struct BinStats {
  int num_groups = 0;
  int num_bins = 0;
  std::vector<std::string> group_names;
  std::vector<double> edges;
  std::vector<double> midpoints;
  std::vector<std::vector<double>> count;      // [g][b]
  std::vector<std::vector<double>> positives;  // [g][b]

  double negatives(int g, int b) const { return count[g][b] - positives[g][b]; }
  double group_total(int g) const;
  double group_positives(int g) const;
  double group_negatives(int g) const { return group_total(g) - group_positives(g); }
  double total() const;
  BinSpec spec() const;

  // Builds stats directly from count tables; used for constructed fixtures.
  static BinStats from_counts(std::vector<std::vector<double>> count,
                              std::vector<std::vector<double>> positives,
                              std::vector<double> midpoints = {});
};

BinStats compute_bin_stats(std::span<const Observation> observations,
                           const BinSpec& spec, int num_groups,
                           std::vector<std::string> group_names = {});

struct OverlapReport {
  bool ok = true;
  std::vector<std::pair<int, int>> empty_cells;  // (bin, group), 0-based

  std::string describe(const BinStats& stats) const;
};

OverlapReport validate_overlap(const BinStats& stats);

}  // namespace mfopt

#endif  // MFOPT_DATA_HPP_
