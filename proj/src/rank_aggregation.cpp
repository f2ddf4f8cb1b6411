#include "netdis/rank_aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "netdis/error.hpp"

namespace netdis {

void CompetitionGraph::add(const Ranking& r) {
  if (r.size() != n_) {
    throw InvalidArgument("ranking over " + std::to_string(r.size()) + " nodes, expected " +
                          std::to_string(n_));
  }
  TransitionMatrix p(r);
  for (NodeId s = 0; s < n_; ++s) {
    std::uint32_t* row = counts_.data() + std::size_t{s} * n_;
    for (NodeId t = 0; t < n_; ++t) row[t] += p(s, t);
  }
  ++criteria_;
}

CompetitionGraph competition_graph(std::span<const Ranking> rankings) {
  if (rankings.empty()) throw InvalidArgument("need at least one ranking");
  CompetitionGraph cg(rankings.front().size());
  for (const auto& r : rankings) cg.add(r);
  return cg;
}

namespace {

RoidTable finish(RoidTable t) {
  t.roid.resize(t.out_degree.size());
  for (std::size_t j = 0; j < t.roid.size(); ++j) {
    t.roid[j] = static_cast<double>(t.out_degree[j] + 1) / static_cast<double>(t.in_degree[j] + 1);
  }
  return t;
}

}  // namespace

RoidTable roid_scores(const CompetitionGraph& cg) {
  const std::size_t n = cg.size();
  RoidTable t;
  t.out_degree.assign(n, 0);
  t.in_degree.assign(n, 0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId u = 0; u < n; ++u) {
      t.out_degree[s] += cg(s, u);
      t.in_degree[s] += cg(u, s);
    }
  }
  return finish(std::move(t));
}

RoidTable roid_from_rankings(std::span<const Ranking> rankings) {
  if (rankings.empty()) throw InvalidArgument("need at least one ranking");
  const std::size_t n = rankings.front().size();
  RoidTable t;
  t.out_degree.assign(n, 0);
  t.in_degree.assign(n, 0);
  for (const auto& r : rankings) {
    if (r.size() != n) throw InvalidArgument("rankings cover different node counts");
    for (std::size_t j = 0; j < n; ++j) {
      t.out_degree[j] += n - r.rank[j];
      t.in_degree[j] += r.rank[j] - 1;
    }
  }
  return finish(std::move(t));
}

Ranking aggregate_rankings(std::span<const Ranking> rankings) {
  return rank_from_scores(roid_from_rankings(rankings).roid);
}

Ranking aggregated_ranking(const Graph& g, std::span<const Criterion> criteria) {
  if (criteria.empty()) throw InvalidArgument("need at least one criterion");
  std::vector<Ranking> rankings;
  rankings.reserve(criteria.size());
  for (Criterion c : criteria) rankings.push_back(rank_from_scores(compute_centrality(g, c)));
  return aggregate_rankings(rankings);
}

std::size_t candidate_count(std::size_t node_count, std::size_t n, double alpha) {
  if (n > node_count) {
    throw InvalidArgument("strength n=" + std::to_string(n) + " exceeds N=" + std::to_string(node_count));
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("redundancy coefficient must lie in [0,1]");
  const double raw = static_cast<double>(n) + static_cast<double>(node_count - n) * alpha;
  const auto rounded = static_cast<std::size_t>(std::floor(raw + 0.5));
  return std::clamp(rounded, n, node_count);
}

NodeSet top_nodes(const Ranking& r, std::size_t count) {
  if (count > r.size()) throw InvalidArgument("asked for more nodes than ranked");
  return NodeSet(std::vector<NodeId>(r.order.begin(), r.order.begin() + static_cast<long>(count)),
                 r.size());
}

NodeSet candidate_set(const Ranking& consensus, std::size_t n, double alpha) {
  if (n < 1) throw InvalidArgument("disintegration strength must be at least 1");
  return top_nodes(consensus, candidate_count(consensus.size(), n, alpha));
}

OverlapReport overlap_analysis(const Graph& g, std::span<const std::string> combos,
                               std::size_t candidate_size) {
  if (combos.empty()) throw InvalidArgument("no criterion combinations given");
  if (candidate_size > g.node_count()) throw InvalidArgument("candidate size exceeds N");

  // Each criterion is ranked once and shared between combos.
  std::map<Criterion, Ranking> cache;
  OverlapReport report;
  report.candidate_size = candidate_size;
  for (const auto& combo : combos) {
    std::vector<Ranking> rankings;
    for (Criterion c : parse_criteria(combo)) {
      auto it = cache.find(c);
      if (it == cache.end()) it = cache.emplace(c, rank_from_scores(compute_centrality(g, c))).first;
      rankings.push_back(it->second);
    }
    report.entries.push_back({combo, top_nodes(aggregate_rankings(rankings), candidate_size)});
  }

  const std::size_t k = report.entries.size();
  report.pairwise.assign(k, std::vector<std::size_t>(k, 0));
  auto intersect = [](const NodeSet& a, const NodeSet& b) {
    std::vector<NodeId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      report.pairwise[i][j] = intersect(report.entries[i].candidates, report.entries[j].candidates).size();
    }
  }
  NodeSet common = report.entries.front().candidates;
  for (const auto& e : report.entries) common = intersect(common, e.candidates);
  report.common = std::move(common);
  return report;
}

}  // namespace netdis
