#pragma once

#include <span>
#include <string>
#include <vector>

#include "netdis/graph.hpp"

namespace netdis {

/// Node-importance criteria; the letter is the tag used in criterion combos.
enum class Criterion : char {
  degree = 'D',
  betweenness = 'B',
  eigenvector = 'E',
  closeness = 'C',
  subgraph = 'S',
};

char criterion_tag(Criterion c);
std::string criterion_name(Criterion c);
Criterion parse_criterion(char tag);
/// "DBE" -> {degree, betweenness, eigenvector}. Rejects empty, unknown or repeated tags.
std::vector<Criterion> parse_criteria(const std::string& combo);
std::string criteria_string(std::span<const Criterion> criteria);

struct ScoreTable {
  Criterion criterion = Criterion::degree;
  std::vector<double> score;
};

/// Strict ranking: rank[v] in 1..N (1 = most important), order[r-1] = node at rank r.
struct Ranking {
  std::vector<std::size_t> rank;
  std::vector<NodeId> order;

  std::size_t size() const noexcept { return rank.size(); }
  /// Validates that `ranks` is a permutation of 1..N.
  static Ranking from_ranks(std::vector<std::size_t> ranks);
  friend bool operator==(const Ranking&, const Ranking&) = default;
};

ScoreTable degree_centrality(const Graph& g);

/// Brandes accumulation over unordered pairs, scaled by 2/((N-1)(N-2)).
ScoreTable betweenness_centrality(const Graph& g);

struct EigenvectorOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 100000;
};
/// Unit-norm nonnegative dominant eigenvector of the adjacency matrix.
ScoreTable eigenvector_centrality(const Graph& g, EigenvectorOptions opts = {});

/// Harmonic closeness: sum of 1/d(v,u) over reachable u, divided by N-1.
ScoreTable closeness_centrality(const Graph& g);

/// Diagonal of exp(A): sum_j u_j[v]^2 e^{lambda_j}.
ScoreTable subgraph_centrality(const Graph& g);

ScoreTable compute_centrality(const Graph& g, Criterion c);

/// Scores closer than this fraction of the largest magnitude rank as tied.
inline constexpr double kScoreTieTolerance = 1e-12;

/// Descending score, ties by ascending node id. Scores are first rounded to
/// multiples of kScoreTieTolerance * max|score|. Throws on non-finite scores.
Ranking rank_from_scores(const ScoreTable& t);
Ranking rank_from_scores(std::span<const double> scores);

}  // namespace netdis
