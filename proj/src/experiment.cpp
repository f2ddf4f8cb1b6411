#include "netdis/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "netdis/centrality.hpp"
#include "netdis/error.hpp"
#include "netdis/seeding.hpp"

namespace netdis {

namespace {

const std::vector<std::string> kStrategies{"TE", "TS", "DC", "BC", "EC", "CC", "SC", "CI", "RD"};

std::optional<Criterion> static_criterion(const std::string& name) {
  if (name == "DC") return Criterion::degree;
  if (name == "BC") return Criterion::betweenness;
  if (name == "EC") return Criterion::eigenvector;
  if (name == "CC") return Criterion::closeness;
  if (name == "SC") return Criterion::subgraph;
  return std::nullopt;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs fn(i) for i in [0, count) on up to `threads` workers; the first
// exception (by index) is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ';';
    out += labels[i];
  }
  return out;
}

std::vector<std::string> labels_of(const Graph& g, const NodeSet& s) {
  std::vector<std::string> out;
  for (NodeId v : s) out.push_back(g.label(v));
  return out;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

// ---- YAML reading -------------------------------------------------------

[[noreturn]] void config_fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node.IsMap()) config_fail(where, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) config_fail(where, "unknown key '" + key + "'");
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) config_fail(where, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    config_fail(where, "cannot read '" + node.Scalar() + "'");
  }
}

std::size_t count_value(const YAML::Node& node, const std::string& where) {
  // yaml-cpp happily wraps "-1" into a huge unsigned value.
  const auto text = node.IsScalar() ? node.Scalar() : std::string();
  if (!text.empty() && text.front() == '-') config_fail(where, "must be non-negative");
  return scalar<std::size_t>(node, where);
}

template <typename T>
std::vector<T> sequence(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence()) config_fail(where, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const auto item = where + "[" + std::to_string(i) + "]";
    if constexpr (std::is_same_v<T, std::size_t>) {
      out.push_back(count_value(node[i], item));
    } else {
      out.push_back(scalar<T>(node[i], item));
    }
  }
  return out;
}

StrategyConfig read_strategy(const YAML::Node& node, const std::string& where) {
  StrategyConfig s;
  if (node.IsScalar()) {
    s.name = node.as<std::string>();
  } else {
    if (!node.IsMap() || !node["name"]) config_fail(where, "expected a name or a mapping with 'name'");
    s.name = scalar<std::string>(node["name"], where + ".name");
    std::set<std::string> allowed{"name"};
    if (s.name == "TE") allowed.insert("alpha");
    if (s.name == "TS") allowed.insert({"tabu_length", "candidates", "stall_limit"});
    if (s.name == "CI") allowed.insert("ell");
    check_keys(node, where + " (" + s.name + ")", allowed);
    if (node["alpha"]) s.alpha = scalar<double>(node["alpha"], where + ".alpha");
    if (node["tabu_length"]) s.tabu_length = count_value(node["tabu_length"], where + ".tabu_length");
    if (node["candidates"]) s.candidates = count_value(node["candidates"], where + ".candidates");
    if (node["stall_limit"]) s.stall_limit = count_value(node["stall_limit"], where + ".stall_limit");
    if (node["ell"]) s.ell = count_value(node["ell"], where + ".ell");
  }
  if (!is_known_strategy(s.name)) config_fail(where, "unknown strategy '" + s.name + "'");
  return s;
}

// ---- YAML writing -------------------------------------------------------

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

template <typename T, typename F>
std::string flow_list(const std::vector<T>& xs, F fmt) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out + "]";
}

}  // namespace

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

bool is_known_strategy(const std::string& name) {
  return std::find(kStrategies.begin(), kStrategies.end(), name) != kStrategies.end();
}

std::vector<std::size_t> NSchedule::resolve(std::size_t node_count) const {
  switch (kind) {
    case Kind::list: return values;
    case Kind::log10: return {log10_strength(node_count)};
    case Kind::ln: return {ln_strength(node_count)};
  }
  return values;
}

std::string NSchedule::describe() const {
  switch (kind) {
    case Kind::log10: return "log10N";
    case Kind::ln: return "lnN";
    case Kind::list: break;
  }
  return flow_list(values, [](std::size_t v) { return std::to_string(v); });
}

std::string format_double(double x) {
  if (std::isnan(x)) return ".nan";
  if (std::isinf(x)) return x > 0 ? ".inf" : "-.inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (instances < 1) fail("instances must be at least 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must lie in [0,1]");
  for (double a : alpha_sweep) {
    if (!(a >= 0.0 && a <= 1.0)) fail("alpha_sweep values must lie in [0,1]");
  }
  if (baseline_trials < 1) fail("baseline_trials must be at least 1");
  if (threads < 1) fail("threads must be at least 1");
  if (bench_repeats < 1) fail("bench.repeats must be at least 1");
  if (venn_candidate_size < 1) fail("venn.candidate_size must be at least 1");
  if (n.kind == NSchedule::Kind::list) {
    if (n.values.empty()) fail("n schedule is empty");
    for (auto v : n.values) {
      if (v < 1) fail("n values must be at least 1");
    }
  }
  try {
    parse_criteria(criteria);
    for (const auto& combo : venn_combos) parse_criteria(combo);
  } catch (const InvalidArgument& e) {
    fail(e.what());
  }
  std::set<std::string> seen;
  for (const auto& s : strategies) {
    if (!is_known_strategy(s.name)) fail("unknown strategy '" + s.name + "'");
    if (!seen.insert(s.name).second) fail("strategy '" + s.name + "' listed twice");
    if (s.alpha && !(*s.alpha >= 0.0 && *s.alpha <= 1.0)) fail("TE alpha must lie in [0,1]");
    if (s.tabu_length < 1 || s.candidates < 1 || s.stall_limit < 1) fail("TS parameters must be positive");
    if (s.ell < 1) fail("CI ell must be at least 1");
  }
  for (auto nodes : bench_nodes) {
    if (nodes < 2) fail("bench node counts must be at least 2");
  }
  if (!edge_list) {
    try {
      generator.validate();
    } catch (const InvalidArgument& e) {
      fail(std::string("generator: ") + e.what());
    }
    for (auto v : n.resolve(generator.node_count)) {
      if (v >= generator.node_count) {
        fail("n=" + std::to_string(v) + " must be below N=" + std::to_string(generator.node_count));
      }
    }
  }
}

ExperimentConfig parse_config(const std::string& yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  ExperimentConfig c;
  if (root.IsNull()) {
    c.validate();
    return c;
  }
  check_keys(root, "config",
             {"input", "instances", "strategies", "n", "alpha", "criteria", "gamma_method", "baseline_trials", "seed",
              "output", "threads", "alpha_sweep", "venn", "bench"});
  if (const auto in = root["input"]) {
    check_keys(in, "input", {"generator", "edge_list"});
    if (in["generator"] && in["edge_list"]) config_fail("input", "give either generator or edge_list");
    if (in["edge_list"]) c.edge_list = scalar<std::string>(in["edge_list"], "input.edge_list");
    if (const auto gen = in["generator"]) {
      check_keys(gen, "input.generator",
                 {"family", "nodes", "neighbors", "shortcut_probability", "gamma", "mean_degree"});
      try {
        if (gen["family"]) c.generator.family = parse_graph_family(scalar<std::string>(gen["family"], "family"));
      } catch (const InvalidArgument& e) {
        config_fail("input.generator.family", e.what());
      }
      if (gen["nodes"]) c.generator.node_count = count_value(gen["nodes"], "input.generator.nodes");
      if (gen["neighbors"]) c.generator.neighbors = count_value(gen["neighbors"], "input.generator.neighbors");
      if (gen["shortcut_probability"]) {
        c.generator.shortcut_probability = scalar<double>(gen["shortcut_probability"], "shortcut_probability");
      }
      if (gen["gamma"]) c.generator.gamma = scalar<double>(gen["gamma"], "input.generator.gamma");
      if (gen["mean_degree"]) c.generator.mean_degree = scalar<double>(gen["mean_degree"], "mean_degree");
    }
  }
  if (root["instances"]) c.instances = count_value(root["instances"], "instances");
  if (const auto s = root["strategies"]) {
    if (!s.IsSequence()) config_fail("strategies", "expected a list");
    for (std::size_t i = 0; i < s.size(); ++i) {
      c.strategies.push_back(read_strategy(s[i], "strategies[" + std::to_string(i) + "]"));
    }
  }
  if (const auto n = root["n"]) {
    if (n.IsScalar() && (n.Scalar() == "log10N" || n.Scalar() == "lnN")) {
      c.n.kind = n.Scalar() == "log10N" ? NSchedule::Kind::log10 : NSchedule::Kind::ln;
      c.n.values.clear();
    } else if (n.IsScalar()) {
      c.n.values = {count_value(n, "n")};
    } else {
      c.n.values = sequence<std::size_t>(n, "n");
    }
  }
  if (root["alpha"]) c.alpha = scalar<double>(root["alpha"], "alpha");
  if (root["criteria"]) c.criteria = scalar<std::string>(root["criteria"], "criteria");
  if (root["gamma_method"]) {
    const auto m = scalar<std::string>(root["gamma_method"], "gamma_method");
    if (m == "auto") {
      c.gamma_method.reset();
    } else {
      try {
        c.gamma_method = parse_gamma_method(m);
      } catch (const InvalidArgument& e) {
        config_fail("gamma_method", e.what());
      }
    }
  }
  if (root["baseline_trials"]) c.baseline_trials = count_value(root["baseline_trials"], "baseline_trials");
  if (root["seed"]) c.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["output"]) c.output = scalar<std::string>(root["output"], "output");
  if (root["threads"]) c.threads = count_value(root["threads"], "threads");
  if (root["alpha_sweep"]) c.alpha_sweep = sequence<double>(root["alpha_sweep"], "alpha_sweep");
  if (const auto v = root["venn"]) {
    check_keys(v, "venn", {"combos", "candidate_size"});
    if (v["combos"]) c.venn_combos = sequence<std::string>(v["combos"], "venn.combos");
    if (v["candidate_size"]) c.venn_candidate_size = count_value(v["candidate_size"], "venn.candidate_size");
  }
  if (const auto b = root["bench"]) {
    check_keys(b, "bench", {"nodes", "repeats"});
    if (b["nodes"]) c.bench_nodes = sequence<std::size_t>(b["nodes"], "bench.nodes");
    if (b["repeats"]) c.bench_repeats = count_value(b["repeats"], "bench.repeats");
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_yaml(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "input:\n";
  if (c.edge_list) {
    out << "  edge_list: " << quoted(*c.edge_list) << '\n';
  } else {
    const auto& g = c.generator;
    out << "  generator:\n"
        << "    family: " << to_string(g.family) << '\n'
        << "    nodes: " << g.node_count << '\n'
        << "    neighbors: " << g.neighbors << '\n'
        << "    shortcut_probability: " << format_double(g.shortcut_probability) << '\n'
        << "    gamma: " << format_double(g.gamma) << '\n'
        << "    mean_degree: " << format_double(g.mean_degree) << '\n';
  }
  out << "instances: " << c.instances << '\n';
  out << "seed: " << c.seed << '\n';
  out << "n: " << c.n.describe() << '\n';
  out << "alpha: " << format_double(c.alpha) << '\n';
  out << "criteria: " << quoted(c.criteria) << '\n';
  out << "gamma_method: " << (c.gamma_method ? to_string(*c.gamma_method) : "auto") << '\n';
  out << "baseline_trials: " << c.baseline_trials << '\n';
  out << "threads: " << c.threads << '\n';
  out << "output: " << quoted(c.output) << '\n';
  if (c.strategies.empty()) {
    out << "strategies: []\n";
  } else {
    out << "strategies:\n";
    for (const auto& s : c.strategies) {
      out << "  - name: " << s.name << '\n';
      if (s.name == "TE" && s.alpha) out << "    alpha: " << format_double(*s.alpha) << '\n';
      if (s.name == "TS") {
        out << "    tabu_length: " << s.tabu_length << '\n'
            << "    candidates: " << s.candidates << '\n'
            << "    stall_limit: " << s.stall_limit << '\n';
      }
      if (s.name == "CI") out << "    ell: " << s.ell << '\n';
    }
  }
  out << "alpha_sweep: " << flow_list(c.alpha_sweep, format_double) << '\n';
  out << "venn:\n"
      << "  combos: " << flow_list(c.venn_combos, quoted) << '\n'
      << "  candidate_size: " << c.venn_candidate_size << '\n';
  out << "bench:\n"
      << "  nodes: " << flow_list(c.bench_nodes, [](std::size_t v) { return std::to_string(v); }) << '\n'
      << "  repeats: " << c.bench_repeats << '\n';
  return out.str();
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  if (c.edge_list) {
    j["input"] = {{"edge_list", *c.edge_list}};
  } else {
    const auto& g = c.generator;
    j["input"] = {{"generator",
                   {{"family", to_string(g.family)},
                    {"nodes", g.node_count},
                    {"neighbors", g.neighbors},
                    {"shortcut_probability", g.shortcut_probability},
                    {"gamma", std::isinf(g.gamma) ? nlohmann::json("inf") : nlohmann::json(g.gamma)},
                    {"mean_degree", g.mean_degree}}}};
  }
  j["instances"] = c.instances;
  j["seed"] = c.seed;
  j["n"] = c.n.kind == NSchedule::Kind::list ? nlohmann::json(c.n.values) : nlohmann::json(c.n.describe());
  j["alpha"] = c.alpha;
  j["criteria"] = c.criteria;
  j["gamma_method"] = c.gamma_method ? to_string(*c.gamma_method) : "auto";
  j["baseline_trials"] = c.baseline_trials;
  j["threads"] = c.threads;
  j["output"] = c.output;
  j["strategies"] = nlohmann::json::array();
  for (const auto& s : c.strategies) {
    nlohmann::json e{{"name", s.name}};
    if (s.name == "TE" && s.alpha) e["alpha"] = *s.alpha;
    if (s.name == "TS") {
      e["tabu_length"] = s.tabu_length;
      e["candidates"] = s.candidates;
      e["stall_limit"] = s.stall_limit;
    }
    if (s.name == "CI") e["ell"] = s.ell;
    j["strategies"].push_back(e);
  }
  j["alpha_sweep"] = c.alpha_sweep;
  j["venn"] = {{"combos", c.venn_combos}, {"candidate_size", c.venn_candidate_size}};
  j["bench"] = {{"nodes", c.bench_nodes}, {"repeats", c.bench_repeats}};
  return j;
}

std::uint64_t instance_seed(std::uint64_t master, std::size_t index) {
  return derive_seed(master, "instance", index);
}

std::uint64_t baseline_seed(std::uint64_t inst_seed, std::size_t n) { return derive_seed(inst_seed, "baseline", n); }

std::uint64_t strategy_seed(std::uint64_t inst_seed, const std::string& strategy, std::size_t n) {
  return derive_seed(inst_seed, "strategy:" + strategy, n);
}

Instance make_instance(const ExperimentConfig& c, std::size_t index) {
  Instance inst;
  inst.index = index;
  inst.seed = instance_seed(c.seed, index);
  if (c.edge_list) {
    inst.graph = read_edge_list_file(*c.edge_list);
  } else {
    GeneratorSpec spec = c.generator;
    spec.seed = inst.seed;
    inst.graph = generate(spec);
  }
  return inst;
}

DisintegrationResult run_strategy(const StrategyConfig& s, const ExperimentConfig& c, const PerformanceEvaluator& eval,
                                  const BaselineEstimate& baseline, const Ranking& consensus, std::size_t n,
                                  std::uint64_t inst_seed) {
  const Graph& g = eval.graph();
  const auto seed = strategy_seed(inst_seed, s.name, n);
  if (s.name == "TE") {
    const auto criteria = parse_criteria(c.criteria);
    return targeted_enumeration(eval, baseline, criteria, n, s.alpha.value_or(c.alpha));
  }
  if (s.name == "TS") {
    return tabu_search(eval, baseline, consensus, n, TabuParams{s.tabu_length, s.candidates, s.stall_limit, seed});
  }
  const auto start = Clock::now();
  NodeSet removed;
  nlohmann::json params = nlohmann::json::object();
  if (auto crit = static_criterion(s.name)) {
    removed = centrality_attack(g, *crit, n);
    params["criterion"] = criterion_name(*crit);
  } else if (s.name == "CI") {
    removed = collective_influence(g, s.ell, n);
    params["ell"] = s.ell;
  } else if (s.name == "RD") {
    removed = random_attack(g, n, seed);
  } else {
    throw ConfigError("unknown strategy '" + s.name + "'");
  }
  DisintegrationResult r = evaluate_removal(eval, baseline, s.name, std::move(removed));
  r.seed = s.name == "RD" ? seed : 0;
  r.params = std::move(params);
  r.wall_time_s = seconds_since(start);
  return r;
}

std::vector<SummaryRow> summarize(const std::vector<CompareRow>& rows) {
  std::vector<SummaryRow> out;
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const SummaryRow& s) { return s.strategy == r.strategy && s.n == r.n; });
    if (it == out.end()) {
      out.push_back({r.strategy, r.n, 0, 0.0, 0.0});
      values.emplace_back();
      it = std::prev(out.end());
    }
    if (r.status == "ok") values[static_cast<std::size_t>(it - out.begin())].push_back(r.result.phi);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].count = values[i].size();
    std::tie(out[i].mean_phi, out[i].std_phi) = mean_std(values[i]);
  }
  return out;
}

namespace {

// Per-instance state shared by every strategy at a given n.
struct PreparedInstance {
  Instance inst;
  std::unique_ptr<PerformanceEvaluator> eval;
  Ranking consensus;
  std::vector<std::size_t> ns;
};

PreparedInstance prepare(const ExperimentConfig& c, std::size_t index) {
  PreparedInstance p;
  p.inst = make_instance(c, index);
  const Graph& g = p.inst.graph;
  p.ns = c.n.resolve(g.node_count());
  for (auto v : p.ns) {
    if (v >= g.node_count()) {
      throw ConfigError("n=" + std::to_string(v) + " must be below N=" + std::to_string(g.node_count()));
    }
  }
  p.eval = std::make_unique<PerformanceEvaluator>(g, resolve_gamma_method(c.gamma_method, g.node_count()));
  const auto criteria = parse_criteria(c.criteria);
  p.consensus = aggregated_ranking(g, criteria);
  return p;
}

}  // namespace

CompareReport run_compare(const ExperimentConfig& c) {
  c.validate();
  if (c.strategies.empty()) throw ConfigError("compare needs at least one strategy");
  std::vector<std::vector<CompareRow>> per_instance(c.instances);
  parallel_for(c.instances, c.threads, [&](std::size_t i) {
    PreparedInstance p = prepare(c, i);
    const Graph& g = p.inst.graph;
    for (std::size_t n : p.ns) {
      const auto bseed = baseline_seed(p.inst.seed, n);
      const auto baseline = random_baseline(*p.eval, n, c.baseline_trials, bseed);
      for (const auto& s : c.strategies) {
        CompareRow row;
        row.instance = i;
        row.instance_seed = p.inst.seed;
        row.strategy = s.name;
        row.n = n;
        row.baseline_seed = bseed;
        row.strategy_seed = strategy_seed(p.inst.seed, s.name, n);
        try {
          row.result = run_strategy(s, c, *p.eval, baseline, p.consensus, n, p.inst.seed);
          row.removed_labels = labels_of(g, row.result.removed);
        } catch (const DegenerateBaselineError&) {
          row.status = "degenerate_baseline";
          row.result.strategy = s.name;
          row.result.gamma_original = p.eval->original();
          row.result.gamma_baseline = baseline.mean;
          row.result.phi = std::numeric_limits<double>::quiet_NaN();
        }
        per_instance[i].push_back(std::move(row));
      }
    }
  });
  CompareReport report;
  for (auto& rows : per_instance) {
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  report.summary = summarize(report.rows);
  return report;
}

void write_compare(const CompareReport& r, const ExperimentConfig& c, const std::string& dir) {
  auto csv = open_output(dir, "compare.csv");
  csv << "instance,instance_seed,strategy,n,baseline_seed,strategy_seed,status,phi,gamma_original,gamma_residual,"
         "gamma_baseline,evaluations,removed\n";
  for (const auto& row : r.rows) {
    const auto& x = row.result;
    csv << row.instance << ',' << row.instance_seed << ',' << row.strategy << ',' << row.n << ','
        << row.baseline_seed << ',' << row.strategy_seed << ',' << row.status << ',' << csv_number(x.phi) << ','
        << csv_number(x.gamma_original) << ',' << csv_number(x.gamma_residual) << ','
        << csv_number(x.gamma_baseline) << ',' << x.evaluations << ','
        << csv_field(join_labels(row.removed_labels)) << '\n';
  }
  auto timing = open_output(dir, "compare_timing.csv");
  timing << "instance,instance_seed,strategy,n,wall_time_s\n";
  for (const auto& row : r.rows) {
    timing << row.instance << ',' << row.instance_seed << ',' << row.strategy << ',' << row.n << ','
           << csv_number(row.result.wall_time_s) << '\n';
  }
  auto summary = open_output(dir, "compare_summary.csv");
  summary << "strategy,n,count,mean_phi,std_phi\n";
  for (const auto& s : r.summary) {
    summary << s.strategy << ',' << s.n << ',' << s.count << ',' << csv_number(s.mean_phi) << ','
            << csv_number(s.std_phi) << '\n';
  }
  nlohmann::json j;
  j["command"] = "compare";
  j["config"] = to_json(c);
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json e{{"instance", row.instance},
                     {"instance_seed", row.instance_seed},
                     {"n", row.n},
                     {"baseline_seed", row.baseline_seed},
                     {"strategy_seed", row.strategy_seed},
                     {"status", row.status},
                     {"strategy", row.strategy},
                     {"removed", row.removed_labels},
                     {"phi", std::isnan(row.result.phi) ? nlohmann::json() : nlohmann::json(row.result.phi)},
                     {"gamma_original", row.result.gamma_original},
                     {"gamma_residual", row.result.gamma_residual},
                     {"gamma_baseline", row.result.gamma_baseline},
                     {"evaluations", row.result.evaluations},
                     {"wall_time_s", row.result.wall_time_s},
                     {"seed", row.result.seed},
                     {"params", row.result.params}};
    j["rows"].push_back(e);
  }
  j["summary"] = nlohmann::json::array();
  for (const auto& s : r.summary) {
    j["summary"].push_back({{"strategy", s.strategy},
                            {"n", s.n},
                            {"count", s.count},
                            {"mean_phi", std::isnan(s.mean_phi) ? nlohmann::json() : nlohmann::json(s.mean_phi)},
                            {"std_phi", std::isnan(s.std_phi) ? nlohmann::json() : nlohmann::json(s.std_phi)}});
  }
  auto js = open_output(dir, "compare.json");
  js << j.dump(2) << '\n';
}

AlphaSweepReport run_alpha_sweep(const ExperimentConfig& c) {
  c.validate();
  if (c.alpha_sweep.empty()) throw ConfigError("alpha_sweep is empty");
  std::vector<std::vector<AlphaRow>> per_instance(c.instances);
  parallel_for(c.instances, c.threads, [&](std::size_t i) {
    PreparedInstance p = prepare(c, i);
    for (std::size_t n : p.ns) {
      const auto baseline = random_baseline(*p.eval, n, c.baseline_trials, baseline_seed(p.inst.seed, n));
      for (double a : c.alpha_sweep) {
        AlphaRow row;
        row.instance = i;
        row.instance_seed = p.inst.seed;
        row.n = n;
        row.alpha = a;
        row.candidate_size = candidate_count(p.inst.graph.node_count(), n, a);
        try {
          row.result = targeted_enumeration(*p.eval, baseline, p.consensus, n, a);
        } catch (const DegenerateBaselineError&) {
          row.status = "degenerate_baseline";
          row.result.phi = std::numeric_limits<double>::quiet_NaN();
        }
        per_instance[i].push_back(std::move(row));
      }
    }
  });
  AlphaSweepReport report;
  for (auto& rows : per_instance) {
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  std::vector<std::vector<double>> values;
  for (const auto& row : report.rows) {
    auto it = std::find_if(report.summary.begin(), report.summary.end(),
                           [&](const AlphaSummaryRow& s) { return s.alpha == row.alpha && s.n == row.n; });
    if (it == report.summary.end()) {
      report.summary.push_back({row.alpha, row.n, 0, 0.0, 0.0});
      values.emplace_back();
      it = std::prev(report.summary.end());
    }
    if (row.status == "ok") values[static_cast<std::size_t>(it - report.summary.begin())].push_back(row.result.phi);
  }
  for (std::size_t k = 0; k < report.summary.size(); ++k) {
    report.summary[k].count = values[k].size();
    std::tie(report.summary[k].mean_phi, report.summary[k].std_phi) = mean_std(values[k]);
  }
  return report;
}

void write_alpha_sweep(const AlphaSweepReport& r, const ExperimentConfig& c, const std::string& dir) {
  auto csv = open_output(dir, "alpha_sweep.csv");
  csv << "alpha,n,count,mean_phi,std_phi\n";
  for (const auto& s : r.summary) {
    csv << csv_number(s.alpha) << ',' << s.n << ',' << s.count << ',' << csv_number(s.mean_phi) << ','
        << csv_number(s.std_phi) << '\n';
  }
  auto rows = open_output(dir, "alpha_sweep_rows.csv");
  rows << "instance,instance_seed,n,alpha,candidate_size,status,phi,evaluations,removed\n";
  nlohmann::json j;
  j["command"] = "alpha-sweep";
  j["config"] = to_json(c);
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    std::vector<std::string> removed;
    for (NodeId v : row.result.removed) removed.push_back(std::to_string(v));
    rows << row.instance << ',' << row.instance_seed << ',' << row.n << ',' << csv_number(row.alpha) << ','
         << row.candidate_size << ',' << row.status << ',' << csv_number(row.result.phi) << ','
         << row.result.evaluations << ',' << join_labels(removed) << '\n';
    j["rows"].push_back({{"instance", row.instance},
                         {"instance_seed", row.instance_seed},
                         {"n", row.n},
                         {"alpha", row.alpha},
                         {"candidate_size", row.candidate_size},
                         {"status", row.status},
                         {"phi", std::isnan(row.result.phi) ? nlohmann::json() : nlohmann::json(row.result.phi)},
                         {"evaluations", row.result.evaluations},
                         {"wall_time_s", row.result.wall_time_s},
                         {"removed_ids", removed}});
  }
  auto js = open_output(dir, "alpha_sweep.json");
  js << j.dump(2) << '\n';
}

std::vector<VennEntry> run_venn(const ExperimentConfig& c) {
  c.validate();
  std::vector<VennEntry> out(c.instances);
  parallel_for(c.instances, c.threads, [&](std::size_t i) {
    Instance inst = make_instance(c, i);
    if (c.venn_candidate_size > inst.graph.node_count()) {
      throw ConfigError("venn.candidate_size exceeds N=" + std::to_string(inst.graph.node_count()));
    }
    out[i].instance = i;
    out[i].instance_seed = inst.seed;
    out[i].overlap = overlap_analysis(inst.graph, c.venn_combos, c.venn_candidate_size);
    out[i].labels = inst.graph.labels();
  });
  return out;
}

nlohmann::json venn_json(const std::vector<VennEntry>& v, const ExperimentConfig& c) {
  nlohmann::json j;
  j["command"] = "venn";
  j["config"] = to_json(c);
  j["instances"] = nlohmann::json::array();
  for (const auto& e : v) {
    auto names = [&](const NodeSet& s) {
      std::vector<std::string> out;
      for (NodeId id : s) out.push_back(e.labels[id]);
      return out;
    };
    nlohmann::json combos = nlohmann::json::object();
    std::vector<std::string> order;
    for (const auto& entry : e.overlap.entries) {
      combos[entry.combo] = names(entry.candidates);
      order.push_back(entry.combo);
    }
    j["instances"].push_back({{"instance", e.instance},
                              {"instance_seed", e.instance_seed},
                              {"candidate_size", e.overlap.candidate_size},
                              {"combos", order},
                              {"candidates", combos},
                              {"pairwise_intersections", e.overlap.pairwise},
                              {"common", names(e.overlap.common)}});
  }
  return j;
}

void write_venn(const std::vector<VennEntry>& v, const ExperimentConfig& c, const std::string& dir) {
  auto js = open_output(dir, "venn.json");
  js << venn_json(v, c).dump(2) << '\n';
}

std::vector<BenchRow> run_bench(const ExperimentConfig& c) {
  c.validate();
  if (c.edge_list) throw ConfigError("bench needs a generator input");
  if (c.strategies.empty()) throw ConfigError("bench needs at least one strategy");
  std::vector<BenchRow> rows;
  for (std::size_t nodes : c.bench_nodes) {
    GeneratorSpec spec = c.generator;
    spec.node_count = nodes;
    const auto inst_seed = derive_seed(c.seed, "bench", nodes);
    spec.seed = inst_seed;
    const Graph g = generate(spec);
    PerformanceEvaluator eval(g, resolve_gamma_method(c.gamma_method, nodes));
    const auto criteria = parse_criteria(c.criteria);
    const Ranking consensus = aggregated_ranking(g, criteria);
    for (std::size_t n : c.n.resolve(nodes)) {
      if (n >= nodes) throw ConfigError("n=" + std::to_string(n) + " must be below N=" + std::to_string(nodes));
      const auto baseline = random_baseline(eval, n, c.baseline_trials, baseline_seed(inst_seed, n));
      for (const auto& s : c.strategies) {
        run_strategy(s, c, eval, baseline, consensus, n, inst_seed);  // warm-up
        std::vector<double> times;
        std::uint64_t evaluations = 0;
        for (std::size_t k = 0; k < c.bench_repeats; ++k) {
          const auto start = Clock::now();
          const auto r = run_strategy(s, c, eval, baseline, consensus, n, inst_seed);
          times.push_back(seconds_since(start));
          evaluations = r.evaluations;
        }
        std::sort(times.begin(), times.end());
        const std::size_t m = times.size();
        const double median = m % 2 ? times[m / 2] : 0.5 * (times[m / 2 - 1] + times[m / 2]);
        rows.push_back({nodes, s.name, n, c.bench_repeats, median, evaluations});
      }
    }
  }
  return rows;
}

void write_bench(const std::vector<BenchRow>& rows, const std::string& dir) {
  auto csv = open_output(dir, "bench.csv");
  csv << "nodes,strategy,n,repeats,median_wall_time_s,evaluations\n";
  for (const auto& r : rows) {
    csv << r.nodes << ',' << r.strategy << ',' << r.n << ',' << r.repeats << ','
        << csv_number(r.median_wall_time_s) << ',' << r.evaluations << '\n';
  }
}

std::vector<std::string> cmd_generate(const ExperimentConfig& c, const std::string& dir) {
  c.validate();
  if (c.edge_list) throw ConfigError("generate needs a generator input");
  std::vector<std::string> written;
  for (std::size_t i = 0; i < c.instances; ++i) {
    const Instance inst = make_instance(c, i);
    const std::string stem = "graph_" + std::to_string(i);
    {
      auto out = open_output(dir, stem + ".txt");
      write_edge_list(out, inst.graph);
    }
    const auto& g = c.generator;
    nlohmann::json meta{{"instance", i},
                        {"seed", inst.seed},
                        {"spec",
                         {{"family", to_string(g.family)},
                          {"nodes", g.node_count},
                          {"neighbors", g.neighbors},
                          {"shortcut_probability", g.shortcut_probability},
                          {"gamma", std::isinf(g.gamma) ? nlohmann::json("inf") : nlohmann::json(g.gamma)},
                          {"mean_degree", g.mean_degree}}},
                        {"N", inst.graph.node_count()},
                        {"W", inst.graph.link_count()}};
    auto side = open_output(dir, stem + ".json");
    side << meta.dump(2) << '\n';
    written.push_back((std::filesystem::path(dir) / (stem + ".txt")).string());
  }
  return written;
}

}  // namespace netdis
