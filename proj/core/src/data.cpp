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

#include "mfopt/data.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "mfopt/error.hpp"

namespace mfopt {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(trim(line.substr(start)));
      break;
    }
    out.emplace_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& value) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

bool parse_integer(std::string_view s, long long& value) {
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(ErrorCode::kSchema, "missing column '" + name + "' in header");
  }
  return static_cast<std::size_t>(it - header.begin());
}

// Dense group ids: numeric order when every label is an integer, otherwise
// lexicographic.
std::vector<std::string> order_groups(std::vector<std::string> raw) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  bool numeric = std::all_of(raw.begin(), raw.end(), [](const std::string& s) {
    long long v;
    return parse_integer(s, v);
  });
  if (numeric) {
    std::stable_sort(raw.begin(), raw.end(), [](const std::string& a, const std::string& b) {
      long long va = 0, vb = 0;
      parse_integer(a, va);
      parse_integer(b, vb);
      return va < vb;
    });
  }
  return raw;
}

}  // namespace

Dataset load_dataset(std::istream& in, const CsvSchema& schema) {
  Dataset data;
  data.schema = schema;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    // Blank lines and '#' comment lines are skipped.
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    if (!have_header) {
      data.header = split(line, schema.delimiter);
      have_header = true;
      continue;
    }
    auto row = split(line, schema.delimiter);
    if (row.size() != data.header.size()) {
      throw Error(ErrorCode::kValidation,
                  "row " + std::to_string(data.cells.size() + 1) + " (line " +
                      std::to_string(line_no) + "): expected " +
                      std::to_string(data.header.size()) + " fields, found " +
                      std::to_string(row.size()));
    }
    data.cells.push_back(std::move(row));
    row_lines.push_back(line_no);
  }
  if (!have_header) throw Error(ErrorCode::kSchema, "input has no header row");

  const std::size_t score_col = find_column(data.header, schema.score_column);
  const std::size_t label_col = find_column(data.header, schema.label_column);
  const std::size_t group_col = find_column(data.header, schema.group_column);

  std::vector<std::string> raw_groups;
  raw_groups.reserve(data.cells.size());
  for (const auto& row : data.cells) raw_groups.push_back(row[group_col]);
  data.group_names = order_groups(raw_groups);
  std::map<std::string, int> group_index;
  for (std::size_t g = 0; g < data.group_names.size(); ++g) {
    group_index[data.group_names[g]] = static_cast<int>(g);
  }

  data.observations.reserve(data.cells.size());
  for (std::size_t i = 0; i < data.cells.size(); ++i) {
    const auto& row = data.cells[i];
    const std::string where = "row " + std::to_string(i + 1) + " (line " +
                              std::to_string(row_lines[i]) + ")";
    Observation obs;
    if (!parse_double(row[score_col], obs.score)) {
      throw Error(ErrorCode::kValidation, where + ": score '" + row[score_col] +
                                              "' is not a number");
    }
    if (!(obs.score >= 0.0 && obs.score <= 1.0)) {
      throw Error(ErrorCode::kValidation,
                  where + ": score " + row[score_col] + " outside [0,1]");
    }
    double label = 0.0;
    if (!parse_double(row[label_col], label) || (label != 0.0 && label != 1.0)) {
      throw Error(ErrorCode::kValidation,
                  where + ": label '" + row[label_col] + "' is not 0 or 1");
    }
    obs.label = label == 1.0 ? 1 : 0;
    if (row[group_col].empty()) {
      throw Error(ErrorCode::kValidation, where + ": empty group");
    }
    obs.group = group_index.at(row[group_col]);
    data.observations.push_back(obs);
  }
  return data;
}

Dataset load_dataset(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return load_dataset(in, schema);
}

void write_dataset(std::ostream& out, const Dataset& data,
                   std::span<const std::string> extra_header,
                   std::span<const std::vector<std::string>> extra_cells) {
  if (!extra_cells.empty() && extra_cells.size() != data.cells.size()) {
    throw Error(ErrorCode::kInvalidArgument, "extra column rows do not match dataset rows");
  }
  const char d = data.schema.delimiter;
  auto write_row = [&](const std::vector<std::string>& base,
                       std::span<const std::string> extra) {
    for (std::size_t j = 0; j < base.size(); ++j) {
      if (j) out << d;
      out << base[j];
    }
    for (const auto& cell : extra) out << d << cell;
    out << '\n';
  };
  write_row(data.header, extra_header);
  for (std::size_t i = 0; i < data.cells.size(); ++i) {
    write_row(data.cells[i], extra_cells.empty()
                                 ? std::span<const std::string>{}
                                 : std::span<const std::string>(extra_cells[i]));
  }
}

int BinSpec::bin_of(double score) const {
  // Interior edges only: scores below edges[1] land in bin 0 and the last
  // bin is closed at 1.
  auto first = edges.begin() + 1;
  auto last = edges.end() - 1;
  auto it = std::upper_bound(first, last, score);
  return static_cast<int>(it - first);
}

BinSpec BinSpec::from_edges(std::vector<double> edges) {
  if (edges.size() < 2) {
    throw Error(ErrorCode::kBinning, "bin spec needs at least two edges");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw Error(ErrorCode::kBinning, "bin edges must be strictly increasing");
    }
  }
  BinSpec spec;
  spec.midpoints.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    spec.midpoints.push_back(0.5 * (edges[i] + edges[i + 1]));
  }
  spec.edges = std::move(edges);
  return spec;
}

int achievable_bins(std::span<const Observation> observations) {
  std::vector<double> scores;
  scores.reserve(observations.size());
  for (const auto& o : observations) scores.push_back(o.score);
  std::sort(scores.begin(), scores.end());
  return static_cast<int>(std::unique(scores.begin(), scores.end()) - scores.begin());
}

BinSpec quantile_bin(std::span<const Observation> observations, int num_bins) {
  if (num_bins < 2) {
    throw Error(ErrorCode::kInvalidArgument, "bin count must be at least 2");
  }
  const int distinct = achievable_bins(observations);
  if (distinct < num_bins) {
    throw Error(ErrorCode::kBinning,
                "only " + std::to_string(distinct) +
                    " distinct score values; achievable bins = " +
                    std::to_string(distinct));
  }
  std::vector<double> scores;
  scores.reserve(observations.size());
  for (const auto& o : observations) scores.push_back(o.score);
  std::sort(scores.begin(), scores.end());
  const auto n = static_cast<std::int64_t>(scores.size());

  std::vector<double> edges{0.0};
  for (int k = 1; k < num_bins; ++k) {
    std::int64_t pos = (static_cast<std::int64_t>(k) * n) / num_bins;
    pos = std::clamp<std::int64_t>(pos, 1, n - 1);
    const double lo = scores[pos - 1];
    const double hi = scores[pos];
    const double edge = lo < hi ? 0.5 * (lo + hi) : hi;
    if (edge > edges.back() && edge < 1.0) edges.push_back(edge);
  }
  edges.push_back(1.0);

  // Merge away bins left empty by tied quantiles.
  while (true) {
    BinSpec spec = BinSpec::from_edges(edges);
    std::vector<std::int64_t> counts(spec.num_bins(), 0);
    for (double s : scores) ++counts[spec.bin_of(s)];
    auto empty = std::find(counts.begin(), counts.end(), 0);
    if (empty == counts.end()) break;
    const auto b = static_cast<std::size_t>(empty - counts.begin());
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(b + 1 < edges.size() - 1 ? b + 1 : b));
  }
  if (edges.size() < 3) {
    throw Error(ErrorCode::kBinning, "quantile ties leave fewer than 2 bins");
  }
  return BinSpec::from_edges(std::move(edges));
}

BinSpec uniform_bins(int num_bins) {
  if (num_bins < 1) throw Error(ErrorCode::kInvalidArgument, "bin count must be positive");
  std::vector<double> edges(num_bins + 1);
  for (int b = 0; b <= num_bins; ++b) edges[b] = static_cast<double>(b) / num_bins;
  return BinSpec::from_edges(std::move(edges));
}

double BinStats::group_total(int g) const {
  return std::accumulate(count[g].begin(), count[g].end(), 0.0);
}

double BinStats::group_positives(int g) const {
  return std::accumulate(positives[g].begin(), positives[g].end(), 0.0);
}

double BinStats::total() const {
  double sum = 0.0;
  for (int g = 0; g < num_groups; ++g) sum += group_total(g);
  return sum;
}

BinSpec BinStats::spec() const {
  BinSpec s;
  s.edges = edges;
  s.midpoints = midpoints;
  return s;
}

BinStats BinStats::from_counts(std::vector<std::vector<double>> count,
                               std::vector<std::vector<double>> positives,
                               std::vector<double> midpoints) {
  if (count.empty() || count.size() != positives.size()) {
    throw Error(ErrorCode::kInvalidArgument, "count tables disagree in group count");
  }
  BinStats stats;
  stats.num_groups = static_cast<int>(count.size());
  stats.num_bins = static_cast<int>(count.front().size());
  for (std::size_t g = 0; g < count.size(); ++g) {
    if (static_cast<int>(count[g].size()) != stats.num_bins ||
        static_cast<int>(positives[g].size()) != stats.num_bins) {
      throw Error(ErrorCode::kInvalidArgument, "count tables disagree in bin count");
    }
    for (int b = 0; b < stats.num_bins; ++b) {
      if (positives[g][b] < 0 || positives[g][b] > count[g][b]) {
        throw Error(ErrorCode::kInvalidArgument, "positive count exceeds bin count");
      }
    }
    stats.group_names.push_back(std::to_string(g + 1));
  }
  BinSpec spec = uniform_bins(stats.num_bins);
  stats.edges = spec.edges;
  if (midpoints.empty()) {
    stats.midpoints = spec.midpoints;
  } else {
    if (static_cast<int>(midpoints.size()) != stats.num_bins) {
      throw Error(ErrorCode::kInvalidArgument, "midpoint count disagrees with bins");
    }
    stats.midpoints = std::move(midpoints);
  }
  stats.count = std::move(count);
  stats.positives = std::move(positives);
  return stats;
}

BinStats compute_bin_stats(std::span<const Observation> observations,
                           const BinSpec& spec, int num_groups,
                           std::vector<std::string> group_names) {
  if (num_groups < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one group");
  BinStats stats;
  stats.num_groups = num_groups;
  stats.num_bins = spec.num_bins();
  stats.edges = spec.edges;
  stats.midpoints = spec.midpoints;
  if (group_names.empty()) {
    for (int g = 0; g < num_groups; ++g) group_names.push_back(std::to_string(g + 1));
  }
  if (static_cast<int>(group_names.size()) != num_groups) {
    throw Error(ErrorCode::kInvalidArgument, "group name count disagrees with group count");
  }
  stats.group_names = std::move(group_names);
  stats.count.assign(num_groups, std::vector<double>(stats.num_bins, 0.0));
  stats.positives.assign(num_groups, std::vector<double>(stats.num_bins, 0.0));
  for (const auto& o : observations) {
    if (o.group < 0 || o.group >= num_groups) {
      throw Error(ErrorCode::kValidation, "observation group out of range");
    }
    const int b = spec.bin_of(o.score);
    stats.count[o.group][b] += 1.0;
    if (o.label == 1) stats.positives[o.group][b] += 1.0;
  }
  return stats;
}

std::string OverlapReport::describe(const BinStats& stats) const {
  if (ok) return "overlap ok";
  std::ostringstream out;
  out << "overlap violated in " << empty_cells.size() << " (bin, group) cell(s):";
  for (auto [b, g] : empty_cells) {
    out << " (bin " << b << ", group "
        << (g < static_cast<int>(stats.group_names.size()) ? stats.group_names[g]
                                                           : std::to_string(g + 1))
        << ")";
  }
  return out.str();
}

OverlapReport validate_overlap(const BinStats& stats) {
  OverlapReport report;
  for (int b = 0; b < stats.num_bins; ++b) {
    for (int g = 0; g < stats.num_groups; ++g) {
      if (!(stats.count[g][b] > 0.0)) report.empty_cells.emplace_back(b, g);
    }
  }
  report.ok = report.empty_cells.empty();
  return report;
}

}  // namespace mfopt
