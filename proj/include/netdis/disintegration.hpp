#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "netdis/centrality.hpp"
#include "netdis/graph.hpp"
#include "netdis/spectral.hpp"

namespace netdis {

/// C(n, k). Throws InvalidArgument when the value does not fit in 64 bits.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// Calls fn once per n-subset of s, in lexicographic order of sorted ids.
/// Throws InvalidArgument when n > |s|.
void for_each_combination(const NodeSet& s, std::size_t n,
                          const std::function<void(std::span<const NodeId>)>& fn);
std::vector<NodeSet> enumerate_combinations(const NodeSet& s, std::size_t n);

/// Disintegration strength for the base-10 schedule: ceil(log10 N).
std::size_t log10_strength(std::size_t node_count);
/// ceil(ln N).
std::size_t ln_strength(std::size_t node_count);
/// Redundancy coefficient giving a candidate set of 2n nodes: n / (N - n).
double doubling_alpha(std::size_t node_count, std::size_t n);

struct DisintegrationResult {
  std::string strategy;
  NodeSet removed;
  double phi = 0.0;
  double gamma_original = 0.0;
  double gamma_residual = 0.0;
  double gamma_baseline = 0.0;
  std::uint64_t evaluations = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

/// Node sets are written as labels of g.
nlohmann::json to_json(const DisintegrationResult& r, const Graph& g);

/// Scores an arbitrary removal set against a shared baseline.
DisintegrationResult evaluate_removal(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                      std::string strategy, NodeSet removed);

/// Φ values closer than this count as tied.
inline constexpr double kPhiTieWindow = 1e-12;

/**
 * Keeps the maximizer of Φ: among all sets with Φ >= max Φ - kPhiTieWindow,
 * the lexicographically smallest. The outcome does not depend on the order
 * in which sets are offered, and merging partial trackers equals offering
 * everything to one.
 */
class BestSetTracker {
 public:
  void offer(double phi, std::span<const NodeId> ids);
  void merge(const BestSetTracker& other);
  bool empty() const noexcept { return near_.empty(); }
  double best_phi() const;
  std::vector<NodeId> best_ids() const;

 private:
  struct Entry {
    double phi;
    std::vector<NodeId> ids;
  };
  void prune();
  double max_ = 0.0;
  std::vector<Entry> near_;
};

struct EnumerationOptions {
  std::size_t threads = 1;
  /// Residuals evaluated together in one batched eigenvalue solve.
  std::size_t max_batch = 128;
};

struct EnumerationOutcome {
  NodeSet best;
  double phi = 0.0;
  std::uint64_t evaluations = 0;
};

/// Evaluates Φ for every n-subset of `candidates` and returns the maximizer.
EnumerationOutcome best_combination(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                    const NodeSet& candidates, std::size_t n, const EnumerationOptions& opts = {});

/// TE over the top candidate_count(N, n, alpha) nodes of `consensus`.
DisintegrationResult targeted_enumeration(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                          const Ranking& consensus, std::size_t n, double alpha,
                                          const EnumerationOptions& opts = {});
/// Same, aggregating the given criteria on the evaluator's graph first.
DisintegrationResult targeted_enumeration(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                          std::span<const Criterion> criteria, std::size_t n, double alpha,
                                          const EnumerationOptions& opts = {});

/// Top-n nodes of one criterion computed once on g.
NodeSet centrality_attack(const Graph& g, Criterion criterion, std::size_t n);

/// CI_l(i) = (k_i - 1) * sum over nodes j at distance exactly l of (k_j - 1),
/// on the graph induced by the alive nodes. Dead nodes score 0.
std::vector<double> collective_influence_scores(const Graph& g, std::span<const std::uint8_t> alive,
                                                std::size_t ell);
/// Adaptive CI: n rounds of removing the top scorer (lowest id on ties).
NodeSet collective_influence(const Graph& g, std::size_t ell, std::size_t n);

struct TabuParams {
  std::size_t tabu_length = 5;
  std::size_t candidates = 5;
  std::size_t stall_limit = 2000;
  std::uint64_t seed = 0;

  void validate() const;
};

/**
 * Single-swap tabu search starting from the top-n of `initial`.
 *
 * Each iteration draws `candidates` swaps (uniform member out, uniform
 * non-member in). A swap whose entering node is tabu is only admissible if it
 * beats the incumbent. The best admissible neighbour becomes the current
 * solution and its entering node joins the FIFO tabu list. Stops after
 * `stall_limit` iterations without improving the incumbent.
 */
DisintegrationResult tabu_search(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                 const Ranking& initial, std::size_t n, const TabuParams& params);

/// Uniform n-subset; n may equal N.
NodeSet random_attack(const Graph& g, std::size_t n, std::uint64_t seed);

}  // namespace netdis
