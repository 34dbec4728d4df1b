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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mfopt/bounds.hpp"
#include "mfopt/data.hpp"
#include "mfopt/frontier.hpp"
#include "mfopt/pipeline.hpp"
#include "mfopt/postprocess.hpp"
#include "mfopt/serialize.hpp"

namespace mfopt::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return kExitUsage;
    case ErrorCode::kSchema: return kExitSchema;
    case ErrorCode::kValidation: return kExitValidation;
    case ErrorCode::kBinning: return kExitBinning;
    case ErrorCode::kOverlap: return kExitOverlap;
    case ErrorCode::kModel: return kExitModel;
    case ErrorCode::kBoundsInfeasible: return kExitBoundsInfeasible;
    case ErrorCode::kExtraction: return kExitExtraction;
    case ErrorCode::kPlanMismatch: return kExitPlanMismatch;
    case ErrorCode::kUndefinedMetric: return kExitUndefinedMetric;
    case ErrorCode::kIo: return kExitIo;
  }
  return kExitInternal;
}

namespace {

// Settings shared by all subcommands; each subcommand registers the subset
// it understands.
struct Settings {
  std::string config;
  std::string input;
  std::string stats;
  std::string output;
  std::string plan;
  std::string report;
  std::string bounds_cache;
  std::string dump_model;
  std::string dump_milp;
  std::string frontier;
  std::string frontier_a;
  std::string frontier_b;
  std::string operating;
  std::string cost;
  std::string benefit;
  std::string score_column = "score";
  std::string label_column = "label";
  std::string group_column = "group";
  std::string delimiter = ",";
  std::string mode;
  std::string precision = "-17";
  std::string grid_dp;
  std::string grid_eodds;
  std::string grid_prp;
  Hyperparams hyper;
  std::uint64_t seed = 0;
  int eval_bins = 100;
  int threads = 1;
  std::int64_t node_limit = -1;
  double auc_min = 0.0;
  double progress_interval = 5.0;
  bool omit_timing = false;
  bool quiet = false;
};

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  outf << text;
  if (!outf) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

CsvSchema schema_of(const Settings& s) {
  if (s.delimiter.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "--delimiter must be a single character");
  }
  CsvSchema schema;
  schema.score_column = s.score_column;
  schema.label_column = s.label_column;
  schema.group_column = s.group_column;
  schema.delimiter = s.delimiter[0];
  return schema;
}

Dataset load_input(const Settings& s) {
  if (s.input.empty()) throw Error(ErrorCode::kInvalidArgument, "--input is required");
  return load_dataset(std::filesystem::path(s.input), schema_of(s));
}

BinStats load_stats(const Settings& s) {
  if (!s.stats.empty()) return parse_bin_stats_json(read_file(s.stats));
  const Dataset data = load_input(s);
  const BinSpec spec = quantile_bin(data.observations, s.hyper.bins);
  return compute_bin_stats(data.observations, spec, data.num_groups(), data.group_names);
}

int parse_precision(const std::string& text) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument, "--precision expects a number, got '" + text + "'");
  }
  if (v <= -1.0 && v == std::floor(v)) return static_cast<int>(v);
  if (v > 0.0 && v < 1.0) return precision_exponent(v);
  throw Error(ErrorCode::kInvalidArgument,
              "--precision must be a negative integer exponent or a tolerance in (0, 1)");
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(flag) + " expects comma-separated numbers, got '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is empty");
  return out;
}

void require_distinct(std::initializer_list<std::pair<const char*, const std::string*>> writes,
                      std::initializer_list<const std::string*> reads) {
  std::map<std::string, const char*> seen;
  for (auto [flag, path] : writes) {
    if (path->empty() || *path == "-") continue;
    const std::string key = std::filesystem::absolute(*path).lexically_normal().string();
    if (!seen.emplace(key, flag).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(flag) + " writes to the same file as " + seen[key]);
    }
  }
  for (const std::string* path : reads) {
    if (path->empty()) continue;
    const std::string key = std::filesystem::absolute(*path).lexically_normal().string();
    if (seen.count(key)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(seen[key]) + " would overwrite the input '" + *path + "'");
    }
  }
}

// ---- option registration ----

void add_schema_options(CLI::App* app, Settings& s) {
  app->add_option("--score-column", s.score_column, "Score column name");
  app->add_option("--label-column", s.label_column, "Label column name");
  app->add_option("--group-column", s.group_column, "Group column name");
  app->add_option("--delimiter", s.delimiter, "Field delimiter");
}

void add_model_options(CLI::App* app, Settings& s) {
  app->add_option("--stats", s.stats, "Bin statistics JSON instead of --input");
  app->add_option("--bins", s.hyper.bins, "Number of quantile bins")->capture_default_str();
  app->add_option("--eps-dp", s.hyper.eps_dp, "Demographic parity tolerance")->capture_default_str();
  app->add_option("--eps-eodds", s.hyper.eps_eodds, "Equalized odds tolerance")->capture_default_str();
  app->add_option("--eps-prp", s.hyper.eps_prp, "Predictive rate parity tolerance")->capture_default_str();
  app->add_option("--retention", s.hyper.retention, "Largest share of a bin that may move")
      ->capture_default_str();
  app->add_option("--window", s.hyper.window, "Largest allowed move, in bins, plus one")
      ->capture_default_str();
  app->add_option("--precision", s.precision,
                  "Expansion precision: exponent p < 0 or a tolerance in (0, 1)")
      ->capture_default_str();
  app->add_option("--time-limit", s.hyper.time_limit, "Seconds per solve")->capture_default_str();
  app->add_option("--gap", s.hyper.gap_target, "Relative gap target")->capture_default_str();
  app->add_option("--mode", s.mode, "Link linearization: exact or approx")
      ->check(CLI::IsMember({"exact", "approx"}));
  app->add_option("--threads", s.threads, "Worker threads")->capture_default_str();
  app->add_option("--node-limit", s.node_limit, "Branch-and-bound node limit (-1: none)")
      ->capture_default_str();
  app->add_flag("--omit-timing", s.omit_timing, "Write zero for all timings");
  app->add_flag("--quiet", s.quiet, "Suppress progress lines");
  app->add_option("--progress-interval", s.progress_interval, "Seconds between progress lines");
}

// ---- subcommands ----

int cmd_bin_stats(const Settings& s, std::ostream& out, std::ostream& err) {
  require_distinct({{"--output", &s.output}}, {&s.input});
  const BinStats stats = load_stats(s);
  const OverlapReport overlap = validate_overlap(stats);
  if (!overlap.ok) err << "warning: " << overlap.describe(stats) << '\n';
  write_text(s.output, dump_json(stats), out);
  return kExitOk;
}

SolveOptions solve_options(const Settings& s, std::ostream& err) {
  SolveOptions so;
  if (!s.mode.empty()) so.mode = *parse_nmdt_mode(s.mode);
  so.threads = s.threads;
  so.node_limit = s.node_limit;
  so.progress = s.quiet ? nullptr : &err;
  so.progress_interval = s.progress_interval;
  return so;
}

int cmd_solve(Settings s, std::ostream& out, std::ostream& err) {
  if (s.plan.empty()) throw Error(ErrorCode::kInvalidArgument, "--plan is required");
  require_distinct({{"--plan", &s.plan},
                    {"--report", &s.report},
                    {"--dump-model", &s.dump_model},
                    {"--dump-milp", &s.dump_milp}},
                   {&s.input, &s.stats});
  s.hyper.precision = parse_precision(s.precision);
  s.hyper.validate();
  const BinStats stats = load_stats(s);
  SolveOptions so = solve_options(s, err);
  const std::string key = bounds_cache_key(stats, s.hyper);
  if (!s.bounds_cache.empty() && std::filesystem::exists(s.bounds_cache)) {
    VarBounds cached = parse_var_bounds_json(read_file(s.bounds_cache));
    if (cached.key == key) {
      so.bounds = std::move(cached);
    } else if (!s.quiet) {
      err << "bounds cache key differs; recomputing\n";
    }
  }
  const SolveOutcome outcome = solve_fair_plan(stats, s.hyper, so);

  if (!s.dump_model.empty()) write_text(s.dump_model, dump_json(outcome.model), out);
  if (!s.dump_milp.empty() && outcome.bounds_infeasibility.empty()) {
    write_text(s.dump_milp, dump_json(outcome.milp), out);
  }
  if (!s.bounds_cache.empty() && outcome.bounds_infeasibility.empty()) {
    write_text(s.bounds_cache, dump_json(outcome.bounds), out);
  }
  ReportJsonOptions ro;
  ro.omit_timing = s.omit_timing;
  write_text(s.report, dump_json(outcome.report, ro), out);
  if (outcome.plan) write_text(s.plan, dump_json(*outcome.plan), out);

  if (!outcome.bounds_infeasibility.empty()) {
    err << "error: " << outcome.bounds_infeasibility
        << " (an infeasible bound subproblem means the full problem is infeasible)\n";
    return kExitBoundsInfeasible;
  }
  if (outcome.report.status == MilpStatus::kInfeasible) {
    err << "error: the problem is infeasible\n";
    return kExitInfeasible;
  }
  if (!outcome.plan) {
    err << "error: no feasible plan found before the " << to_string(outcome.report.status)
        << '\n';
    return kExitNoIncumbent;
  }
  return kExitOk;
}

void check_plan_matches(const TransitionPlan& plan, const Dataset& data) {
  bool edges_ok = plan.edges.size() == static_cast<std::size_t>(plan.num_bins) + 1 &&
                  plan.edges.front() == 0.0 && plan.edges.back() == 1.0;
  for (std::size_t i = 1; edges_ok && i < plan.edges.size(); ++i) {
    edges_ok = plan.edges[i] > plan.edges[i - 1];
  }
  if (!edges_ok) {
    throw Error(ErrorCode::kPlanMismatch, "plan bin edges do not partition [0, 1]");
  }
  if (plan.group_names != data.group_names) {
    std::string names;
    for (const auto& g : data.group_names) names += (names.empty() ? "" : ", ") + g;
    throw Error(ErrorCode::kPlanMismatch,
                "plan groups do not match the dataset groups (" + names + ")");
  }
}

int cmd_apply(const Settings& s, std::ostream& out, std::ostream&) {
  if (s.plan.empty()) throw Error(ErrorCode::kInvalidArgument, "--plan is required");
  require_distinct({{"--output", &s.output}}, {&s.input, &s.plan});
  const std::string mode = s.mode.empty() ? "stochastic" : s.mode;
  Dataset data = load_input(s);
  const TransitionPlan plan = parse_plan_json(read_file(s.plan));
  check_plan_matches(plan, data);

  // Re-application replaces earlier output columns instead of adding more.
  for (const char* name : {"new_score", "new_bin"}) {
    auto it = std::find(data.header.begin(), data.header.end(), name);
    if (it == data.header.end()) continue;
    const auto col = static_cast<std::size_t>(it - data.header.begin());
    data.header.erase(it);
    for (auto& row : data.cells) row.erase(row.begin() + static_cast<std::ptrdiff_t>(col));
  }

  ScoredAssignment result;
  if (mode == "stochastic") {
    const BinSpec spec = plan.spec();
    result.bins = apply_stochastic(plan, data.observations, s.seed);
    for (int b : result.bins) result.scores.push_back(spec.midpoints[b]);
  } else if (mode == "interpolated") {
    result = apply_interpolated(plan, data.observations, s.seed);
  } else {
    result = apply_expected_score(plan, data.observations);
  }
  std::vector<std::vector<std::string>> extra;
  extra.reserve(result.bins.size());
  for (std::size_t i = 0; i < result.bins.size(); ++i) {
    extra.push_back({format_double(result.scores[i]), std::to_string(result.bins[i])});
  }
  std::ostringstream text;
  text << "# mfopt apply mode=" << mode << " seed=" << s.seed << '\n';
  const std::vector<std::string> header{"new_score", "new_bin"};
  write_dataset(text, data, header, extra);
  write_text(s.output, text.str(), out);
  return kExitOk;
}

int cmd_audit(const Settings& s, std::ostream& out, std::ostream&) {
  require_distinct({{"--output", &s.output}}, {&s.input});
  if (s.eval_bins < 1) throw Error(ErrorCode::kInvalidArgument, "--eval-bins must be positive");
  const Dataset data = load_input(s);
  const BinStats stats = compute_bin_stats(data.observations, uniform_bins(s.eval_bins),
                                           data.num_groups(), data.group_names);
  write_text(s.output, dump_json(evaluate_metrics(stats)), out);
  return kExitOk;
}

int cmd_frontier(Settings s, bool time_limit_given, std::ostream& out, std::ostream& err) {
  require_distinct({{"--output", &s.output}}, {&s.input, &s.stats});
  s.hyper.precision = parse_precision(s.precision);
  GridSpec grid;
  grid.eps_dp = s.grid_dp.empty() ? std::vector<double>{s.hyper.eps_dp}
                                  : parse_list(s.grid_dp, "--grid-dp");
  grid.eps_eodds = s.grid_eodds.empty() ? std::vector<double>{s.hyper.eps_eodds}
                                        : parse_list(s.grid_eodds, "--grid-eodds");
  grid.eps_prp = s.grid_prp.empty() ? std::vector<double>{s.hyper.eps_prp}
                                    : parse_list(s.grid_prp, "--grid-prp");
  if (!time_limit_given) s.hyper.time_limit /= static_cast<double>(grid.size());
  s.hyper.validate();
  const BinStats stats = load_stats(s);
  SweepOptions so;
  so.solve = solve_options(s, err);
  so.solve.progress = nullptr;
  so.threads = s.threads;
  const std::vector<FrontierPoint> points = sweep(stats, grid, s.hyper, so);
  std::ostringstream text;
  write_frontier_csv(text, points, s.omit_timing);
  write_text(s.output, text.str(), out);
  return kExitOk;
}

std::vector<FrontierPoint> load_frontier(const std::string& path, const char* flag) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
  std::istringstream in(read_file(path));
  return read_frontier_csv(in);
}

int cmd_tradeoff(const Settings& s, std::ostream& out, std::ostream&) {
  require_distinct({{"--output", &s.output}}, {&s.frontier});
  const auto points = load_frontier(s.frontier, "--frontier");
  const auto cost = parse_axis(s.cost);
  const auto benefit = parse_axis(s.benefit);
  if (!cost || !benefit) {
    throw Error(ErrorCode::kInvalidArgument, "--cost and --benefit take auc, dp, eodds or prp");
  }
  const std::vector<double> op = parse_list(s.operating, "--operating");
  if (op.size() != 4) {
    throw Error(ErrorCode::kInvalidArgument, "--operating expects auc,dp,eodds,prp");
  }
  FrontierPoint operating;
  operating.auc = op[0];
  operating.eps_dp = op[1];
  operating.eps_eodds = op[2];
  operating.eps_prp = op[3];
  operating.has_metrics = true;
  const std::vector<FrontierPoint> front = non_dominated(points);
  const auto hit = tradeoff_query(front, operating, *cost, *benefit);
  std::ostringstream text;
  if (hit) {
    const std::vector<FrontierPoint> one{*hit};
    write_frontier_csv(text, one);
  } else {
    text << "none\n";
  }
  write_text(s.output, text.str(), out);
  return kExitOk;
}

int cmd_compare(const Settings& s, std::ostream& out, std::ostream&) {
  require_distinct({{"--output", &s.output}}, {&s.frontier_a, &s.frontier_b});
  const auto a = non_dominated(load_frontier(s.frontier_a, "--frontier-a"));
  const auto b = non_dominated(load_frontier(s.frontier_b, "--frontier-b"));
  write_text(s.output, dump_json(compare_models(a, b, s.auc_min)), out);
  return kExitOk;
}

// Turns config entries into command-line arguments for every option the
// chosen subcommand knows and the command line does not already set.
std::vector<std::string> config_arguments(const std::string& path, CLI::App* sub,
                                          const std::vector<std::string>& args,
                                          const std::set<std::string>& known) {
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, "config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!config.is_object()) throw Error(ErrorCode::kSchema, "config must be a JSON object");
  std::vector<std::string> extra;
  for (auto it = config.begin(); it != config.end(); ++it) {
    std::string flag = "--" + it.key();
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (!known.count(flag)) {
      throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + it.key() + "'");
    }
    CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt || flag == "--config") continue;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    const nlohmann::json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back(flag);
    } else if (v.is_string()) {
      extra.push_back(flag + "=" + v.get<std::string>());
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& item : v) joined += (joined.empty() ? "" : ",") + item.dump();
      extra.push_back(flag + "=" + joined);
    } else if (v.is_number()) {
      extra.push_back(flag + "=" + v.dump());
    } else {
      throw Error(ErrorCode::kSchema, "config key '" + it.key() + "' has an unsupported type");
    }
  }
  return extra;
}

int parse_args(CLI::App& app, const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  std::vector<std::string> owned{"mfopt"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : owned) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? -1 : kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Fair score post-processing by mixed-integer optimization", "mfopt"};
  app.require_subcommand(1);

  CLI::App* bin_stats = app.add_subcommand("bin-stats", "Quantile-bin a dataset and print counts");
  CLI::App* solve = app.add_subcommand("solve", "Optimize a fair transition plan");
  CLI::App* apply = app.add_subcommand("apply", "Transform scores with a plan");
  CLI::App* audit = app.add_subcommand("audit", "Fairness violations and AUC of a dataset");
  CLI::App* frontier = app.add_subcommand("frontier", "Sweep a tolerance grid");
  CLI::App* tradeoff = app.add_subcommand("tradeoff", "Query a frontier for a trade-off");
  CLI::App* compare = app.add_subcommand("compare", "Compare two frontiers");

  for (CLI::App* sub : app.get_subcommands({})) {
    sub->add_option("--config", s.config, "JSON file with option defaults");
    sub->add_option("--output,-o", s.output, "Output file (default: standard output)");
  }
  for (CLI::App* sub : {bin_stats, solve, apply, audit, frontier}) {
    sub->add_option("--input,-i", s.input, "Input CSV");
    add_schema_options(sub, s);
  }
  bin_stats->add_option("--bins", s.hyper.bins, "Number of quantile bins")->capture_default_str();
  bin_stats->add_option("--stats", s.stats, "Re-emit a statistics JSON file");

  add_model_options(solve, s);
  solve->add_option("--plan", s.plan, "Plan JSON to write");
  solve->add_option("--report", s.report, "Solve report JSON (default: standard output)");
  solve->add_option("--bounds-cache", s.bounds_cache, "Read and write tightened bounds here");
  solve->add_option("--dump-model", s.dump_model, "Write the assembled model as JSON");
  solve->add_option("--dump-milp", s.dump_milp, "Write the linearized MILP as JSON");

  apply->add_option("--plan", s.plan, "Plan JSON to apply");
  apply->add_option("--mode", s.mode, "stochastic, interpolated or expected")
      ->check(CLI::IsMember({"stochastic", "interpolated", "expected"}));
  apply->add_option("--seed", s.seed, "Random seed")->capture_default_str();

  audit->add_option("--eval-bins", s.eval_bins, "Fixed-width bins for evaluation")
      ->capture_default_str();

  add_model_options(frontier, s);
  frontier->add_option("--grid-dp", s.grid_dp, "Comma-separated DP tolerances");
  frontier->add_option("--grid-eodds", s.grid_eodds, "Comma-separated EOdds tolerances");
  frontier->add_option("--grid-prp", s.grid_prp, "Comma-separated PRP tolerances");

  tradeoff->add_option("--frontier", s.frontier, "Frontier CSV");
  tradeoff->add_option("--operating", s.operating, "Operating point auc,dp,eodds,prp");
  tradeoff->add_option("--cost", s.cost, "Axis to give up: auc, dp, eodds or prp");
  tradeoff->add_option("--benefit", s.benefit, "Axis to improve: auc, dp, eodds or prp");

  compare->add_option("--frontier-a", s.frontier_a, "First frontier CSV");
  compare->add_option("--frontier-b", s.frontier_b, "Second frontier CSV");
  compare->add_option("--auc-min", s.auc_min, "Smallest admissible AUC")->capture_default_str();

  std::set<std::string> known;
  for (CLI::App* sub : app.get_subcommands({})) {
    for (const CLI::Option* opt : sub->get_options()) {
      for (const std::string& name : opt->get_lnames()) known.insert("--" + name);
    }
  }

  try {
    int code = parse_args(app, args, out, err);
    if (code != kExitOk) return code < 0 ? kExitOk : code;
    CLI::App* chosen = app.get_subcommands().front();

    if (!s.config.empty()) {
      const std::string config_path = s.config;
      auto extra = config_arguments(config_path, chosen, args, known);
      if (!extra.empty()) {
        std::vector<std::string> merged(args);
        auto pos = std::find(merged.begin(), merged.end(), chosen->get_name());
        merged.insert(pos + 1, extra.begin(), extra.end());
        s = Settings{};
        app.clear();
        code = parse_args(app, merged, out, err);
        if (code != kExitOk) return code < 0 ? kExitOk : code;
        chosen = app.get_subcommands().front();
      }
    }

    const std::string name = chosen->get_name();
    if (name == "bin-stats") return cmd_bin_stats(s, out, err);
    if (name == "solve") return cmd_solve(s, out, err);
    if (name == "apply") return cmd_apply(s, out, err);
    if (name == "audit") return cmd_audit(s, out, err);
    if (name == "frontier") {
      return cmd_frontier(s, chosen->get_option("--time-limit")->count() > 0, out, err);
    }
    if (name == "tradeoff") return cmd_tradeoff(s, out, err);
    if (name == "compare") return cmd_compare(s, out, err);
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace mfopt::cli
