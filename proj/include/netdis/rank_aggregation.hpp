#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netdis/centrality.hpp"
#include "netdis/graph.hpp"

namespace netdis {

/// Pairwise outranking indicator for one criterion: p(s,t) = 1 iff rank(s) < rank(t).
class TransitionMatrix {
 public:
  explicit TransitionMatrix(const Ranking& r) : rank_(r.rank) {}
  std::size_t size() const noexcept { return rank_.size(); }
  std::uint8_t operator()(NodeId s, NodeId t) const { return rank_[s] < rank_[t] ? 1 : 0; }

 private:
  std::vector<std::size_t> rank_;
};

/**
 * Competition graph: a(s,t) counts the criteria that place s ahead of t.
 *
 * Stored densely (N x N counters), accumulated one ranking at a time so only
 * one matrix is ever live. Intended for moderate N; aggregate_rankings()
 * does not need it.
 */
class CompetitionGraph {
 public:
  explicit CompetitionGraph(std::size_t n) : n_(n), counts_(n * n, 0) {}

  void add(const Ranking& r);
  std::size_t size() const noexcept { return n_; }
  std::size_t criteria() const noexcept { return criteria_; }
  std::uint32_t operator()(NodeId s, NodeId t) const { return counts_[std::size_t{s} * n_ + t]; }

 private:
  std::size_t n_;
  std::size_t criteria_ = 0;
  std::vector<std::uint32_t> counts_;
};

CompetitionGraph competition_graph(std::span<const Ranking> rankings);

/// Out-degree, in-degree and ratio of out-in degrees per node.
struct RoidTable {
  std::vector<std::uint64_t> out_degree;
  std::vector<std::uint64_t> in_degree;
  std::vector<double> roid;
};

/// Row and column sums of the competition matrix.
RoidTable roid_scores(const CompetitionGraph& cg);

/// Same quantities straight from the rankings in O(M N): a node of rank r
/// outranks N - r others and is outranked by r - 1.
RoidTable roid_from_rankings(std::span<const Ranking> rankings);

/// Consensus ranking by descending ROID, ties by ascending id.
Ranking aggregate_rankings(std::span<const Ranking> rankings);

/// Ranks g under every criterion and aggregates.
Ranking aggregated_ranking(const Graph& g, std::span<const Criterion> criteria);

/// round-half-up(n + (N - n) * alpha), clamped to [n, N].
std::size_t candidate_count(std::size_t node_count, std::size_t n, double alpha);

/// The top candidate_count(N, n, alpha) nodes of the consensus ranking.
NodeSet candidate_set(const Ranking& consensus, std::size_t n, double alpha);
NodeSet top_nodes(const Ranking& r, std::size_t count);

struct OverlapReport {
  struct Entry {
    std::string combo;
    NodeSet candidates;
  };
  std::size_t candidate_size = 0;
  std::vector<Entry> entries;
  /// pairwise[i][j] = |candidates_i ∩ candidates_j|.
  std::vector<std::vector<std::size_t>> pairwise;
  NodeSet common;  // intersection over all combos
};

/// Candidate sets of size `candidate_size` for each criterion combo ("D",
/// "DBE", ...) and their intersections.
OverlapReport overlap_analysis(const Graph& g, std::span<const std::string> combos,
                               std::size_t candidate_size);

}  // namespace netdis
