#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netdis/graph.hpp"

namespace netdis {

/// How network performance Γ (natural connectivity) is computed.
enum class GammaMethod {
  exact,   // ln(mean e^{lambda_i}) over the full spectrum
  approx,  // lambda_1 - ln N
};

std::string to_string(GammaMethod m);
GammaMethod parse_gamma_method(const std::string& s);

/// Dense spectra are used up to this many nodes when no method is forced.
inline constexpr std::size_t kExactGammaMaxNodes = 2000;
GammaMethod resolve_gamma_method(std::optional<GammaMethod> requested, std::size_t node_count);

struct PerformanceValue {
  double value = 0.0;
  GammaMethod method = GammaMethod::exact;
  std::size_t node_count = 0;
};

/// ln((1/N) sum_i e^{lambda_i}) with a max shift against overflow.
double natural_connectivity_from_spectrum(std::span<const double> eigenvalues);

PerformanceValue natural_connectivity_exact(const Graph& g);
/// Throws InvalidArgument for graphs without links.
PerformanceValue natural_connectivity_approx(const Graph& g);
PerformanceValue natural_connectivity(const Graph& g, GammaMethod method);

/**
 * Γ of residual graphs G - S for one fixed G.
 *
 * Every residual is evaluated from scratch (dense spectrum, or Lanczos from
 * the uniform vector), so the value for a set is a pure function of the set:
 * identical whichever strategy, enumeration order or thread produced it.
 */
class PerformanceEvaluator {
 public:
  PerformanceEvaluator(const Graph& g, GammaMethod method);

  const Graph& graph() const noexcept { return *graph_; }
  GammaMethod method() const noexcept { return method_; }

  /// Γ(G).
  double original() const noexcept { return original_; }
  /// Γ(G - removed). `removed` must leave at least one node.
  double residual(const NodeSet& removed) const;
  /// Γ of the subgraph induced by nodes with alive[v] != 0.
  double induced(std::span<const std::uint8_t> alive) const;
  /// Γ for a batch of residuals: column c keeps the alive nodes minus
  /// extra_dead[c * per_column, (c + 1) * per_column). Each value equals the
  /// one induced() gives for the same node set, bit for bit.
  std::vector<double> induced_batch(std::span<const std::uint8_t> alive, std::span<const NodeId> extra_dead,
                                    std::size_t per_column) const;

 private:
  const Graph* graph_;
  GammaMethod method_;
  double original_ = 0.0;
};

/// Mean Γ of residual graphs after removing uniformly random n-subsets.
struct BaselineEstimate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (0 for one trial)
  std::size_t trials = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;
};

/// Trial t draws its subset from an RNG seeded with derive_seed(seed, "trial", t).
NodeSet random_subset(std::size_t node_count, std::size_t n, std::uint64_t seed);
BaselineEstimate random_baseline(const PerformanceEvaluator& eval, std::size_t n, std::size_t trials,
                                 std::uint64_t seed);
BaselineEstimate random_baseline(const Graph& g, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 GammaMethod method);

/// Φ = (Γ(G) - Γ(Ĝ)) / (Γ(G) - Γ(G̃)). Throws DegenerateBaselineError when the
/// denominator is below 1e-12 in magnitude.
double disintegration_effect(double gamma_original, double gamma_residual, double gamma_baseline);
double disintegration_effect(const PerformanceEvaluator& eval, const NodeSet& removed,
                             const BaselineEstimate& baseline);

}  // namespace netdis
