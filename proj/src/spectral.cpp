#include "netdis/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "netdis/error.hpp"
#include "netdis/linalg.hpp"
#include "netdis/seeding.hpp"

namespace netdis {

std::string to_string(GammaMethod m) { return m == GammaMethod::exact ? "exact" : "approx"; }

GammaMethod parse_gamma_method(const std::string& s) {
  if (s == "exact") return GammaMethod::exact;
  if (s == "approx") return GammaMethod::approx;
  throw InvalidArgument("unknown gamma method '" + s + "' (expected exact|approx)");
}

GammaMethod resolve_gamma_method(std::optional<GammaMethod> requested, std::size_t node_count) {
  if (requested) return *requested;
  return node_count <= kExactGammaMaxNodes ? GammaMethod::exact : GammaMethod::approx;
}

double natural_connectivity_from_spectrum(std::span<const double> eigenvalues) {
  if (eigenvalues.empty()) throw InvalidArgument("natural connectivity of an empty graph");
  const double top = *std::max_element(eigenvalues.begin(), eigenvalues.end());
  double sum = 0.0;
  for (double l : eigenvalues) sum += std::exp(l - top);
  return top + std::log(sum) - std::log(static_cast<double>(eigenvalues.size()));
}

PerformanceValue natural_connectivity_exact(const Graph& g) {
  if (g.node_count() == 0) throw InvalidArgument("natural connectivity needs N >= 1");
  Eigen::VectorXd spectrum = adjacency_spectrum(g);
  return {natural_connectivity_from_spectrum({spectrum.data(), static_cast<std::size_t>(spectrum.size())}),
          GammaMethod::exact, g.node_count()};
}

PerformanceValue natural_connectivity_approx(const Graph& g) {
  if (g.link_count() == 0) throw InvalidArgument("approximate natural connectivity needs a link");
  return {PerformanceEvaluator(g, GammaMethod::approx).original(), GammaMethod::approx, g.node_count()};
}

PerformanceValue natural_connectivity(const Graph& g, GammaMethod method) {
  return method == GammaMethod::exact ? natural_connectivity_exact(g) : natural_connectivity_approx(g);
}

PerformanceEvaluator::PerformanceEvaluator(const Graph& g, GammaMethod method)
    : graph_(&g), method_(method) {
  if (g.node_count() == 0) throw InvalidArgument("performance of an empty graph");
  original_ = induced(std::vector<std::uint8_t>(g.node_count(), 1));
}

double PerformanceEvaluator::induced(std::span<const std::uint8_t> alive) const {
  const Graph& g = *graph_;
  std::size_t alive_count = 0;
  for (auto a : alive) alive_count += a ? 1 : 0;
  if (alive_count == 0) throw InvalidArgument("residual graph has no nodes");

  if (method_ == GammaMethod::approx) {
    return dominant_eigenvalue(g, alive).value - std::log(static_cast<double>(alive_count));
  }
  std::vector<Eigen::Index> index(g.node_count(), -1);
  Eigen::Index next = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (alive[v]) index[v] = next++;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(next, next);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (!alive[u]) continue;
    for (NodeId v : g.neighbors(u)) {
      if (alive[v]) a(index[u], index[v]) = 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  return natural_connectivity_from_spectrum({values.data(), static_cast<std::size_t>(values.size())});
}

std::vector<double> PerformanceEvaluator::induced_batch(std::span<const std::uint8_t> alive,
                                                       std::span<const NodeId> extra_dead,
                                                       std::size_t per_column) const {
  const Graph& g = *graph_;
  if (per_column == 0 || extra_dead.size() % per_column != 0) {
    throw InvalidArgument("extra dead list is not a whole number of columns");
  }
  const std::size_t columns = extra_dead.size() / per_column;
  std::vector<double> out(columns);
  if (method_ == GammaMethod::approx) {
    std::size_t base = 0;
    for (auto a : alive) base += a ? 1 : 0;
    const auto lambda = dominant_eigenvalues(g, alive, extra_dead, per_column);
    for (std::size_t c = 0; c < columns; ++c) {
      std::size_t count = base;
      for (std::size_t k = 0; k < per_column; ++k) {
        const NodeId x = extra_dead[c * per_column + k];
        if (x != kNoNode && alive[x]) --count;
      }
      if (count == 0) throw InvalidArgument("residual graph has no nodes");
      out[c] = lambda[c].value - std::log(static_cast<double>(count));
    }
    return out;
  }
  std::vector<std::uint8_t> mask(alive.begin(), alive.end());
  for (std::size_t c = 0; c < columns; ++c) {
    const auto cols = extra_dead.subspan(c * per_column, per_column);
    for (NodeId x : cols) {
      if (x != kNoNode) {
        if (x >= g.node_count()) throw InvalidArgument("batch node out of range");
        mask[x] = 0;
      }
    }
    out[c] = induced(mask);
    for (NodeId x : cols) {
      if (x != kNoNode) mask[x] = alive[x];
    }
  }
  return out;
}

double PerformanceEvaluator::residual(const NodeSet& removed) const {
  const std::size_t n = graph_->node_count();
  if (!removed.empty() && removed.ids().back() >= n) throw InvalidArgument("removed node out of range");
  std::vector<std::uint8_t> alive(n, 1);
  for (NodeId v : removed) alive[v] = 0;
  return induced(alive);
}

NodeSet random_subset(std::size_t node_count, std::size_t n, std::uint64_t seed) {
  if (n > node_count) throw InvalidArgument("subset larger than node count");
  std::vector<NodeId> all(node_count);
  std::iota(all.begin(), all.end(), NodeId{0});
  std::vector<NodeId> picked;
  picked.reserve(n);
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), static_cast<long>(n), rng);
  return NodeSet(std::move(picked), node_count);
}

BaselineEstimate random_baseline(const PerformanceEvaluator& eval, std::size_t n, std::size_t trials,
                                 std::uint64_t seed) {
  const std::size_t nodes = eval.graph().node_count();
  if (n == 0 || n >= nodes) {
    throw InvalidArgument("baseline strength must satisfy 0 < n < N (n=" + std::to_string(n) +
                          ", N=" + std::to_string(nodes) + ")");
  }
  if (trials == 0) throw InvalidArgument("baseline needs at least one trial");
  BaselineEstimate est;
  est.trials = trials;
  est.n = n;
  est.seed = seed;
  est.samples.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    est.samples.push_back(eval.residual(random_subset(nodes, n, derive_seed(seed, "trial", t))));
  }
  est.mean = std::accumulate(est.samples.begin(), est.samples.end(), 0.0) / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (double x : est.samples) ss += (x - est.mean) * (x - est.mean);
    est.stddev = std::sqrt(ss / static_cast<double>(trials - 1));
  }
  return est;
}

BaselineEstimate random_baseline(const Graph& g, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 GammaMethod method) {
  PerformanceEvaluator eval(g, method);
  return random_baseline(eval, n, trials, seed);
}

double disintegration_effect(double gamma_original, double gamma_residual, double gamma_baseline) {
  const double denom = gamma_original - gamma_baseline;
  if (!(std::abs(denom) >= 1e-12)) {
    throw DegenerateBaselineError("random-removal baseline leaves performance unchanged (|Γ(G)-Γ(G̃)| = " +
                                  std::to_string(std::abs(denom)) + ")");
  }
  return (gamma_original - gamma_residual) / denom;
}

double disintegration_effect(const PerformanceEvaluator& eval, const NodeSet& removed,
                             const BaselineEstimate& baseline) {
  if (removed.size() != baseline.n) {
    throw InvalidArgument("removed set size " + std::to_string(removed.size()) +
                          " does not match baseline strength " + std::to_string(baseline.n));
  }
  return disintegration_effect(eval.original(), eval.residual(removed), baseline.mean);
}

}  // namespace netdis
