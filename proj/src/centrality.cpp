#include "netdis/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "netdis/error.hpp"
#include "netdis/linalg.hpp"

namespace netdis {

char criterion_tag(Criterion c) { return static_cast<char>(c); }

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::degree: return "degree";
    case Criterion::betweenness: return "betweenness";
    case Criterion::eigenvector: return "eigenvector";
    case Criterion::closeness: return "closeness";
    case Criterion::subgraph: return "subgraph";
  }
  return "?";
}

Criterion parse_criterion(char tag) {
  switch (tag) {
    case 'D': return Criterion::degree;
    case 'B': return Criterion::betweenness;
    case 'E': return Criterion::eigenvector;
    case 'C': return Criterion::closeness;
    case 'S': return Criterion::subgraph;
    default: throw InvalidArgument(std::string("unknown criterion tag '") + tag + "'");
  }
}

std::vector<Criterion> parse_criteria(const std::string& combo) {
  std::vector<Criterion> out;
  for (char c : combo) {
    if (c == '-' || c == ' ') continue;
    Criterion crit = parse_criterion(c);
    if (std::find(out.begin(), out.end(), crit) != out.end()) {
      throw InvalidArgument("criterion '" + std::string(1, c) + "' repeated in '" + combo + "'");
    }
    out.push_back(crit);
  }
  if (out.empty()) throw InvalidArgument("criterion combination is empty");
  return out;
}

std::string criteria_string(std::span<const Criterion> criteria) {
  std::string s;
  for (Criterion c : criteria) s.push_back(criterion_tag(c));
  return s;
}

Ranking Ranking::from_ranks(std::vector<std::size_t> ranks) {
  Ranking r;
  const std::size_t n = ranks.size();
  r.order.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (ranks[v] < 1 || ranks[v] > n || seen[ranks[v] - 1]) {
      throw InvalidArgument("ranks are not a permutation of 1..N");
    }
    seen[ranks[v] - 1] = true;
    r.order[ranks[v] - 1] = static_cast<NodeId>(v);
  }
  r.rank = std::move(ranks);
  return r;
}

ScoreTable degree_centrality(const Graph& g) {
  ScoreTable t{Criterion::degree, std::vector<double>(g.node_count())};
  for (NodeId v = 0; v < g.node_count(); ++v) t.score[v] = static_cast<double>(g.degree(v));
  return t;
}

ScoreTable betweenness_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  ScoreTable t{Criterion::betweenness, std::vector<double>(n, 0.0)};
  if (n < 3) return t;

  // Brandes (2001): one BFS per source, dependencies accumulated in reverse order.
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<NodeId> stack;
  stack.reserve(n);
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    stack.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      stack.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) t.score[w] += delta[w];
    }
  }
  // Each unordered pair was counted from both ends.
  const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
  for (double& x : t.score) x = x / 2.0 / pairs;
  return t;
}

ScoreTable eigenvector_centrality(const Graph& g, EigenvectorOptions opts) {
  const std::size_t n = g.node_count();
  if (g.link_count() == 0) throw InvalidArgument("eigenvector centrality needs at least one link");

  // Iterating on A + I keeps the dominant eigenvalue unique in modulus, so
  // bipartite graphs (stars, paths) converge instead of oscillating.
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
  std::vector<std::uint8_t> alive(n, 1);
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    masked_multiply(g, alive, x, y);
    double norm = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      y[v] += x[v];
      norm += y[v] * y[v];
    }
    norm = std::sqrt(norm);
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      y[v] /= norm;
      change = std::max(change, std::abs(y[v] - x[v]));
    }
    std::swap(x, y);
    if (change < opts.tolerance) return {Criterion::eigenvector, std::move(x)};
  }
  throw ConvergenceError("eigenvector centrality did not converge", opts.max_iterations);
}

ScoreTable closeness_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  ScoreTable t{Criterion::closeness, std::vector<double>(n, 0.0)};
  if (n < 2) return t;
  std::vector<long> dist(n);
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    frontier.push(s);
    double sum = 0.0;
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      if (v != s) sum += 1.0 / static_cast<double>(dist[v]);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
      }
    }
    t.score[s] = sum / static_cast<double>(n - 1);
  }
  return t;
}

ScoreTable subgraph_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  ScoreTable t{Criterion::subgraph, std::vector<double>(n, 0.0)};
  if (n == 0) return t;
  auto eig = adjacency_eigendecomposition(g);
  const Eigen::VectorXd weights = eig.values.array().exp();
  for (std::size_t v = 0; v < n; ++v) {
    const auto row = eig.vectors.row(static_cast<Eigen::Index>(v));
    t.score[v] = (row.array().square() * weights.transpose().array()).sum();
  }
  return t;
}

ScoreTable compute_centrality(const Graph& g, Criterion c) {
  switch (c) {
    case Criterion::degree: return degree_centrality(g);
    case Criterion::betweenness: return betweenness_centrality(g);
    case Criterion::eigenvector: return eigenvector_centrality(g);
    case Criterion::closeness: return closeness_centrality(g);
    case Criterion::subgraph: return subgraph_centrality(g);
  }
  throw InvalidArgument("unknown criterion");
}

Ranking rank_from_scores(std::span<const double> scores) {
  const std::size_t n = scores.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (!std::isfinite(scores[v])) {
      throw InvalidArgument("non-finite score for node " + std::to_string(v));
    }
  }
  // Snap to a grid relative to the largest magnitude so that scores equal up
  // to solver rounding tie, and fall back to id order.
  double scale = 0.0;
  for (double s : scores) scale = std::max(scale, std::abs(s));
  std::vector<double> key(scores.begin(), scores.end());
  if (scale > 0.0) {
    const double step = scale * kScoreTieTolerance;
    for (double& k : key) k = std::round(k / step);
  }
  Ranking r;
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), NodeId{0});
  std::stable_sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) { return key[a] > key[b]; });
  r.rank.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.rank[r.order[i]] = i + 1;
  return r;
}

Ranking rank_from_scores(const ScoreTable& t) { return rank_from_scores(t.score); }

}  // namespace netdis
