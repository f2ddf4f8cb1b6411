#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netdis/disintegration.hpp"
#include "netdis/generators.hpp"
#include "netdis/graph.hpp"
#include "netdis/rank_aggregation.hpp"
#include "netdis/spectral.hpp"

namespace netdis {

/// One attack strategy and its parameters. Names: TE, TS, DC, BC, EC, CC,
/// SC (static centrality top-n), CI, RD (random).
struct StrategyConfig {
  std::string name;
  std::optional<double> alpha;  // TE; falls back to the experiment alpha
  std::size_t tabu_length = 5;  // TS
  std::size_t candidates = 5;   // TS
  std::size_t stall_limit = 2000;  // TS
  std::size_t ell = 2;  // CI

  friend bool operator==(const StrategyConfig&, const StrategyConfig&) = default;
};

bool is_known_strategy(const std::string& name);

/// Removal strengths: an explicit list, or ceil(log10 N) / ceil(ln N).
struct NSchedule {
  enum class Kind { list, log10, ln };
  Kind kind = Kind::list;
  std::vector<std::size_t> values{1};

  std::vector<std::size_t> resolve(std::size_t node_count) const;
  std::string describe() const;
  /// Values only count for explicit lists.
  friend bool operator==(const NSchedule& a, const NSchedule& b) {
    return a.kind == b.kind && (a.kind != Kind::list || a.values == b.values);
  }
};

struct ExperimentConfig {
  std::optional<std::string> edge_list;  // replaces the generator when set
  GeneratorSpec generator;               // its seed is ignored; instances derive their own
  std::size_t instances = 1;
  std::vector<StrategyConfig> strategies;
  NSchedule n;
  double alpha = 0.05;
  std::string criteria = "DBE";
  std::optional<GammaMethod> gamma_method;  // empty: exact up to kExactGammaMaxNodes
  std::size_t baseline_trials = 100;
  std::uint64_t seed = 0;
  std::string output = "out";
  std::size_t threads = 1;
  std::vector<double> alpha_sweep{0.0, 0.02, 0.05, 0.1, 0.2};
  std::vector<std::string> venn_combos{"D", "DB", "DBE"};
  std::size_t venn_candidate_size = 10;
  std::vector<std::size_t> bench_nodes{100, 200, 400};
  std::size_t bench_repeats = 3;

  /// Throws ConfigError.
  void validate() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ConfigError on syntax errors, unknown keys or invalid values.
ExperimentConfig parse_config(const std::string& yaml);
ExperimentConfig load_config(const std::string& path);
/// Canonical YAML: every key, fixed order. parse_config(to_yaml(c)) == c.
std::string to_yaml(const ExperimentConfig& c);
nlohmann::json to_json(const ExperimentConfig& c);

/// Shortest text that reads back as the same double (YAML spelling for
/// non-finite values).
std::string format_double(double x);
/// As format_double, with nan / inf / -inf for CSV.
std::string csv_number(double x);

struct Instance {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Graph graph;
};

Instance make_instance(const ExperimentConfig& c, std::size_t index);
std::uint64_t instance_seed(std::uint64_t master, std::size_t index);
std::uint64_t baseline_seed(std::uint64_t instance_seed, std::size_t n);
std::uint64_t strategy_seed(std::uint64_t instance_seed, const std::string& strategy, std::size_t n);

/// Runs one strategy against a shared baseline. `consensus` is the
/// aggregated ranking used by TS for its starting point.
DisintegrationResult run_strategy(const StrategyConfig& s, const ExperimentConfig& c, const PerformanceEvaluator& eval,
                                  const BaselineEstimate& baseline, const Ranking& consensus, std::size_t n,
                                  std::uint64_t inst_seed);

struct CompareRow {
  std::size_t instance = 0;
  std::uint64_t instance_seed = 0;
  std::string strategy;
  std::size_t n = 0;
  std::uint64_t baseline_seed = 0;
  std::uint64_t strategy_seed = 0;
  std::string status = "ok";  // or "degenerate_baseline"
  DisintegrationResult result;
  std::vector<std::string> removed_labels;
};

struct SummaryRow {
  std::string strategy;
  std::size_t n = 0;
  std::size_t count = 0;
  double mean_phi = 0.0;
  double std_phi = 0.0;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  std::vector<SummaryRow> summary;
};

/// Mean and sample standard deviation of ok rows per (strategy, n), in
/// first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<CompareRow>& rows);

CompareReport run_compare(const ExperimentConfig& c);
/// compare.csv (deterministic), compare_summary.csv, compare_timing.csv, compare.json.
void write_compare(const CompareReport& r, const ExperimentConfig& c, const std::string& dir);

struct AlphaRow {
  std::size_t instance = 0;
  std::uint64_t instance_seed = 0;
  std::size_t n = 0;
  double alpha = 0.0;
  std::size_t candidate_size = 0;
  std::string status = "ok";
  DisintegrationResult result;
};

struct AlphaSummaryRow {
  double alpha = 0.0;
  std::size_t n = 0;
  std::size_t count = 0;
  double mean_phi = 0.0;
  double std_phi = 0.0;
};

struct AlphaSweepReport {
  std::vector<AlphaRow> rows;
  std::vector<AlphaSummaryRow> summary;
};

AlphaSweepReport run_alpha_sweep(const ExperimentConfig& c);
/// alpha_sweep.csv (summary), alpha_sweep_rows.csv, alpha_sweep.json.
void write_alpha_sweep(const AlphaSweepReport& r, const ExperimentConfig& c, const std::string& dir);

struct VennEntry {
  std::size_t instance = 0;
  std::uint64_t instance_seed = 0;
  OverlapReport overlap;
  std::vector<std::string> labels;  // node labels of the instance graph
};

std::vector<VennEntry> run_venn(const ExperimentConfig& c);
nlohmann::json venn_json(const std::vector<VennEntry>& v, const ExperimentConfig& c);
/// venn.json.
void write_venn(const std::vector<VennEntry>& v, const ExperimentConfig& c, const std::string& dir);

struct BenchRow {
  std::size_t nodes = 0;
  std::string strategy;
  std::size_t n = 0;
  std::size_t repeats = 0;
  double median_wall_time_s = 0.0;
  std::uint64_t evaluations = 0;
};

/// Generator instances of each size in bench_nodes; per strategy one discarded
/// warm-up run, then the median of bench_repeats timed runs.
std::vector<BenchRow> run_bench(const ExperimentConfig& c);
/// bench.csv.
void write_bench(const std::vector<BenchRow>& rows, const std::string& dir);

/// Writes graph_<i>.txt and graph_<i>.json (spec, seed, N, W) per instance.
std::vector<std::string> cmd_generate(const ExperimentConfig& c, const std::string& dir);

}  // namespace netdis
