// netdis: command-line front end for disintegration experiments.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netdis/error.hpp"
#include "netdis/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> gamma_method;
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "YAML experiment config");
  cmd->add_option("--seed", f.seed, "Master seed (overrides the config)");
  cmd->add_option("--out", f.out, "Output directory (overrides the config)");
  cmd->add_option("--gamma-method", f.gamma_method, "exact | approx | auto")
      ->check(CLI::IsMember({"exact", "approx", "auto"}));
  cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
}

netdis::ExperimentConfig load(const CommonFlags& f) {
  netdis::ExperimentConfig c = f.config.empty() ? netdis::ExperimentConfig{} : netdis::load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.output = *f.out;
  if (f.gamma_method) {
    if (*f.gamma_method == "auto") {
      c.gamma_method.reset();
    } else {
      c.gamma_method = netdis::parse_gamma_method(*f.gamma_method);
    }
  }
  if (f.threads) c.threads = *f.threads;
  return c;
}

struct GenerateFlags {
  std::optional<std::string> family;
  std::optional<std::size_t> nodes;
  std::optional<std::size_t> neighbors;
  std::optional<double> p;
  std::optional<double> gamma;
  std::optional<double> mean_degree;
  std::optional<std::size_t> instances;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network disintegration by targeted enumeration"};
  app.require_subcommand(1);

  CommonFlags gen_flags, cmp_flags, sweep_flags, venn_flags, bench_flags;
  GenerateFlags g;
  auto* gen = app.add_subcommand("generate", "Write generator instances as edge lists with JSON sidecars");
  add_common(gen, gen_flags);
  gen->add_option("--family", g.family, "NW | SF | complete | star | path | ring");
  gen->add_option("--nodes", g.nodes, "Node count N");
  gen->add_option("--neighbors", g.neighbors, "Ring lattice degree K");
  gen->add_option("--p", g.p, "Shortcut probability (NW)");
  gen->add_option("--gamma", g.gamma, "Degree exponent (SF)");
  gen->add_option("--mean-degree", g.mean_degree, "Mean degree (SF)");
  gen->add_option("--instances", g.instances, "Instance count");

  auto* cmp = app.add_subcommand("compare", "Run every strategy on every instance and strength");
  add_common(cmp, cmp_flags);
  auto* sweep = app.add_subcommand("alpha-sweep", "TE across redundancy coefficients");
  add_common(sweep, sweep_flags);
  auto* venn = app.add_subcommand("venn", "Candidate-set overlap between criterion combinations");
  add_common(venn, venn_flags);
  auto* bench = app.add_subcommand("bench", "Median wall time per strategy and network size");
  add_common(bench, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (gen->parsed()) {
      auto c = load(gen_flags);
      if (g.family) c.generator.family = netdis::parse_graph_family(*g.family);
      if (g.nodes) c.generator.node_count = *g.nodes;
      if (g.neighbors) c.generator.neighbors = *g.neighbors;
      if (g.p) c.generator.shortcut_probability = *g.p;
      if (g.gamma) c.generator.gamma = *g.gamma;
      if (g.mean_degree) c.generator.mean_degree = *g.mean_degree;
      if (g.instances) c.instances = *g.instances;
      for (const auto& path : netdis::cmd_generate(c, c.output)) std::cout << path << '\n';
    } else if (cmp->parsed()) {
      const auto c = load(cmp_flags);
      const auto report = netdis::run_compare(c);
      netdis::write_compare(report, c, c.output);
      for (const auto& s : report.summary) {
        std::cout << s.strategy << " n=" << s.n << " mean_phi=" << netdis::csv_number(s.mean_phi)
                  << " std=" << netdis::csv_number(s.std_phi) << " (" << s.count << ")\n";
      }
    } else if (sweep->parsed()) {
      const auto c = load(sweep_flags);
      const auto report = netdis::run_alpha_sweep(c);
      netdis::write_alpha_sweep(report, c, c.output);
      for (const auto& s : report.summary) {
        std::cout << "alpha=" << netdis::csv_number(s.alpha) << " n=" << s.n
                  << " mean_phi=" << netdis::csv_number(s.mean_phi) << " std=" << netdis::csv_number(s.std_phi)
                  << '\n';
      }
    } else if (venn->parsed()) {
      const auto c = load(venn_flags);
      const auto v = netdis::run_venn(c);
      netdis::write_venn(v, c, c.output);
      std::cout << netdis::venn_json(v, c)["instances"].dump(2) << '\n';
    } else if (bench->parsed()) {
      const auto c = load(bench_flags);
      const auto rows = netdis::run_bench(c);
      netdis::write_bench(rows, c.output);
      for (const auto& r : rows) {
        std::cout << "N=" << r.nodes << ' ' << r.strategy << " n=" << r.n
                  << " median_s=" << netdis::csv_number(r.median_wall_time_s) << '\n';
      }
    }
  } catch (const netdis::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const netdis::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const netdis::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const netdis::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
