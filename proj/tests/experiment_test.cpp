#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "netdis/error.hpp"
#include "netdis/experiment.hpp"

using namespace netdis;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("netdis_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.generator.node_count = 60;
  c.generator.neighbors = 4;
  c.instances = 3;
  c.strategies = {{"TE"}, {"TS"}, {"DC"}, {"BC"}, {"CI"}, {"RD"}};
  c.strategies[1].stall_limit = 30;
  c.n.values = {2, 3};
  c.baseline_trials = 20;
  c.gamma_method = GammaMethod::approx;
  c.seed = 2024;
  return c;
}

}  // namespace

TEST_CASE("config: defaults parse from an empty document") {
  CHECK(parse_config("{}") == ExperimentConfig{});
}

TEST_CASE("config: full document") {
  const auto c = parse_config(R"(
input:
  generator: {family: SF, nodes: 300, gamma: 2.5, mean_degree: 4}
instances: 4
seed: 99
n: log10N
alpha: 0.1
criteria: DB
gamma_method: approx
baseline_trials: 10
threads: 2
output: results
strategies:
  - TE
  - name: TS
    stall_limit: 100
  - {name: CI, ell: 3}
alpha_sweep: [0, 0.5]
venn: {combos: [D, DBE], candidate_size: 5}
bench: {nodes: [50], repeats: 1}
)");
  CHECK(c.generator.family == GraphFamily::scale_free);
  CHECK(c.generator.node_count == 300);
  CHECK(c.generator.gamma == 2.5);
  CHECK(c.instances == 4);
  CHECK(c.n.kind == NSchedule::Kind::log10);
  CHECK(c.n.resolve(300) == std::vector<std::size_t>{3});
  CHECK(c.gamma_method == GammaMethod::approx);
  REQUIRE(c.strategies.size() == 3);
  CHECK(c.strategies[0].name == "TE");
  CHECK(c.strategies[1].stall_limit == 100);
  CHECK(c.strategies[2].ell == 3);
  CHECK(c.alpha_sweep == std::vector<double>{0.0, 0.5});
  CHECK(c.venn_combos == std::vector<std::string>{"D", "DBE"});
  CHECK(c.bench_nodes == std::vector<std::size_t>{50});
}

TEST_CASE("config: n schedules") {
  CHECK(parse_config("n: 4").n.values == std::vector<std::size_t>{4});
  CHECK(parse_config("n: [1, 2, 5]").n.values == std::vector<std::size_t>{1, 2, 5});
  const auto ln = parse_config("n: lnN").n;
  CHECK(ln.kind == NSchedule::Kind::ln);
  CHECK(ln.resolve(200) == std::vector<std::size_t>{6});
  CHECK(parse_config("n: log10N").n.resolve(1000) == std::vector<std::size_t>{3});
}

TEST_CASE("config: rejected documents") {
  CHECK_THROWS_AS(parse_config("bogus: 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("input: {generator: {nodez: 5}}"), ConfigError);
  CHECK_THROWS_AS(parse_config("instances: -2"), ConfigError);
  CHECK_THROWS_AS(parse_config("instances: 0"), ConfigError);
  CHECK_THROWS_AS(parse_config("alpha: 1.5"), ConfigError);
  CHECK_THROWS_AS(parse_config("strategies: [XX]"), ConfigError);
  CHECK_THROWS_AS(parse_config("strategies: [TE, TE]"), ConfigError);
  CHECK_THROWS_AS(parse_config("strategies: [{name: DC, ell: 2}]"), ConfigError);
  CHECK_THROWS_AS(parse_config("gamma_method: fast"), ConfigError);
  CHECK_THROWS_AS(parse_config("criteria: DQ"), ConfigError);
  CHECK_THROWS_AS(parse_config("n: [0]"), ConfigError);
  CHECK_THROWS_AS(parse_config("n: 1000"), ConfigError);
  CHECK_THROWS_AS(parse_config("input: {generator: {family: NW, neighbors: 3}}"), ConfigError);
  CHECK_THROWS_AS(parse_config("alpha: [1"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST_CASE("config: canonical YAML round-trips") {
  std::vector<ExperimentConfig> configs{ExperimentConfig{}, small_config()};
  ExperimentConfig edge;
  edge.edge_list = "data/my net.txt";
  edge.n.kind = NSchedule::Kind::ln;
  edge.alpha = 0.1 + 0.2;
  edge.strategies = {{"TE", 0.07}, {"SC"}, {"EC"}, {"CC"}};
  edge.output = "out: \"quoted\"";
  configs.push_back(edge);
  ExperimentConfig uniform;
  uniform.generator.family = GraphFamily::scale_free;
  uniform.generator.gamma = std::numeric_limits<double>::infinity();
  uniform.n.kind = NSchedule::Kind::log10;
  configs.push_back(uniform);
  for (const auto& c : configs) {
    const std::string yaml = to_yaml(c);
    CAPTURE(yaml);
    CHECK(parse_config(yaml) == c);
    CHECK(to_yaml(parse_config(yaml)) == yaml);
  }
}

TEST_CASE("number formatting") {
  for (double x : {0.0, 0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(std::numeric_limits<double>::infinity()) == ".inf");
  CHECK(format_double(std::nan("")) == ".nan");
  CHECK(csv_number(std::nan("")) == "nan");
  CHECK(csv_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(csv_number(0.5) == "0.5");
}

TEST_CASE("seed derivation") {
  CHECK(instance_seed(1, 0) != instance_seed(1, 1));
  CHECK(instance_seed(1, 0) != instance_seed(2, 0));
  CHECK(baseline_seed(5, 2) != baseline_seed(5, 3));
  CHECK(strategy_seed(5, "TS", 2) != strategy_seed(5, "RD", 2));
  const auto c = small_config();
  CHECK(make_instance(c, 1).graph == make_instance(c, 1).graph);
  CHECK_FALSE(make_instance(c, 1).graph == make_instance(c, 2).graph);
}

TEST_CASE("compare: rows, summary and determinism") {
  auto c = small_config();
  const auto report = run_compare(c);
  CHECK(report.rows.size() == 3 * 2 * 6);
  for (const auto& row : report.rows) {
    CHECK(row.status == "ok");
    CHECK(row.result.removed.size() == row.n);
    CHECK(row.removed_labels.size() == row.n);
    CHECK(std::isfinite(row.result.phi));
  }

  // Summary recomputed independently.
  REQUIRE(report.summary.size() == 2 * 6);
  for (const auto& s : report.summary) {
    std::vector<double> v;
    for (const auto& row : report.rows) {
      if (row.strategy == s.strategy && row.n == s.n) v.push_back(row.result.phi);
    }
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    CHECK(s.count == v.size());
    CHECK(s.mean_phi == doctest::Approx(mean).epsilon(1e-12));
    CHECK(s.std_phi == doctest::Approx(std::sqrt(ss / static_cast<double>(v.size() - 1))).epsilon(1e-12));
  }

  const auto a = scratch_dir("compare_a");
  const auto b = scratch_dir("compare_b");
  write_compare(report, c, a.string());
  c.threads = 3;
  write_compare(run_compare(c), c, b.string());
  CHECK(slurp(a / "compare.csv") == slurp(b / "compare.csv"));
  CHECK(slurp(a / "compare_summary.csv") == slurp(b / "compare_summary.csv"));
  CHECK(fs::exists(a / "compare_timing.csv"));
  const auto j = nlohmann::json::parse(slurp(a / "compare.json"));
  CHECK(j["rows"].size() == report.rows.size());
  CHECK(j["config"]["seed"] == 2024);
}

TEST_CASE("compare: degenerate baselines are flagged") {
  ExperimentConfig c;
  c.generator.family = GraphFamily::ring;
  c.generator.node_count = 6;
  c.generator.neighbors = 0;
  c.criteria = "D";
  c.gamma_method = GammaMethod::exact;
  c.strategies = {{"DC"}, {"RD"}};
  c.baseline_trials = 5;
  const auto report = run_compare(c);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(row.status == "degenerate_baseline");
    CHECK(std::isnan(row.result.phi));
  }
  CHECK(report.summary[0].count == 0);
}

TEST_CASE("compare: missing strategies") {
  ExperimentConfig c;
  c.generator.node_count = 30;
  CHECK_THROWS_AS(run_compare(c), ConfigError);
}

TEST_CASE("alpha sweep") {
  auto c = small_config();
  c.n.values = {3};
  const auto report = run_alpha_sweep(c);
  REQUIRE(report.rows.size() == 3 * c.alpha_sweep.size());
  for (std::size_t i = 0; i < 3; ++i) {
    double previous = -INFINITY;
    for (const auto& row : report.rows) {
      if (row.instance != i) continue;
      CHECK(row.result.phi >= previous);
      previous = row.result.phi;
    }
  }
  CHECK(report.summary.size() == c.alpha_sweep.size());
  const auto dir = scratch_dir("sweep");
  write_alpha_sweep(report, c, dir.string());
  CHECK(fs::exists(dir / "alpha_sweep.csv"));
  CHECK(fs::exists(dir / "alpha_sweep_rows.csv"));
  CHECK(fs::exists(dir / "alpha_sweep.json"));
}

TEST_CASE("venn") {
  auto c = small_config();
  c.instances = 2;
  c.venn_combos = {"D", "D", "DBE"};
  const auto v = run_venn(c);
  REQUIRE(v.size() == 2);
  for (const auto& e : v) {
    CHECK(e.overlap.pairwise[0][1] == c.venn_candidate_size);
    CHECK(e.overlap.common.size() <= c.venn_candidate_size);
  }
  const auto dir = scratch_dir("venn");
  write_venn(v, c, dir.string());
  const auto j = nlohmann::json::parse(slurp(dir / "venn.json"));
  CHECK(j["instances"].size() == 2);
  c.venn_candidate_size = 100;
  CHECK_THROWS_AS(run_venn(c), ConfigError);
}

TEST_CASE("bench") {
  auto c = small_config();
  c.strategies = {{"TE"}, {"DC"}};
  c.bench_nodes = {30, 40};
  c.bench_repeats = 1;
  c.n.values = {2};
  const auto rows = run_bench(c);
  CHECK(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.median_wall_time_s >= 0.0);
  const auto dir = scratch_dir("bench");
  write_bench(rows, dir.string());
  const std::string csv = slurp(dir / "bench.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("generate") {
  ExperimentConfig c;
  c.generator.node_count = 10;
  c.generator.neighbors = 2;
  c.generator.shortcut_probability = 0.0;
  c.instances = 2;
  const auto dir = scratch_dir("generate");
  const auto paths = cmd_generate(c, dir.string());
  CHECK(paths.size() >= 2);
  const std::string text = slurp(dir / "graph_0.txt");
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);
  const auto meta = nlohmann::json::parse(slurp(dir / "graph_0.json"));
  CHECK(meta["N"] == 10);
  CHECK(meta["W"] == 10);
  CHECK(meta["seed"] == instance_seed(c.seed, 0));

  const auto again = scratch_dir("generate_again");
  cmd_generate(c, again.string());
  CHECK(slurp(dir / "graph_1.txt") == slurp(again / "graph_1.txt"));
}
