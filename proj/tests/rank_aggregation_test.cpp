#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "netdis/error.hpp"
#include "netdis/generators.hpp"
#include "netdis/rank_aggregation.hpp"
#include "table1.hpp"

using namespace netdis;

namespace {

std::vector<Ranking> table1_rankings() {
  return {Ranking::from_ranks(table1::kDegreeRank), Ranking::from_ranks(table1::kBetweennessRank),
          Ranking::from_ranks(table1::kEigenvectorRank)};
}

Ranking random_ranking(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1);
  std::shuffle(ranks.begin(), ranks.end(), rng);
  return Ranking::from_ranks(ranks);
}

}  // namespace

TEST_CASE("transition matrix") {
  const TransitionMatrix two(Ranking::from_ranks({1, 2}));
  CHECK(two(0, 1) == 1);
  CHECK(two(1, 0) == 0);

  const TransitionMatrix identity(Ranking::from_ranks({1, 2, 3}));
  for (NodeId s = 0; s < 3; ++s) {
    for (NodeId t = 0; t < 3; ++t) CHECK(identity(s, t) == (s < t ? 1 : 0));
  }

  const Ranking r = Ranking::from_ranks({3, 1, 4, 2});
  const TransitionMatrix p(r);
  for (NodeId s = 0; s < 4; ++s) {
    std::size_t row = 0;
    for (NodeId t = 0; t < 4; ++t) row += p(s, t);
    CHECK(row == 4 - r.rank[s]);
  }
}

TEST_CASE("competition graph") {
  SUBCASE("one ranking equals its transition matrix") {
    const Ranking r = Ranking::from_ranks({2, 4, 1, 3});
    const std::vector<Ranking> one{r};
    const CompetitionGraph cg = competition_graph(one);
    const TransitionMatrix p(r);
    for (NodeId s = 0; s < 4; ++s) {
      for (NodeId t = 0; t < 4; ++t) CHECK(cg(s, t) == p(s, t));
    }
  }
  SUBCASE("reversed rankings") {
    const std::vector<Ranking> both{Ranking::from_ranks({1, 2, 3, 4}), Ranking::from_ranks({4, 3, 2, 1})};
    const CompetitionGraph cg = competition_graph(both);
    CHECK(cg.criteria() == 2);
    for (NodeId s = 0; s < 4; ++s) {
      for (NodeId t = 0; t < 4; ++t) CHECK(cg(s, t) == (s == t ? 0u : 1u));
    }
  }
  SUBCASE("Table 1 pair (2,3)") {
    const auto rs = table1_rankings();
    const CompetitionGraph cg = competition_graph(rs);
    CHECK(cg(1, 2) == 2);
    CHECK(cg(2, 1) == 1);
  }
  SUBCASE("size mismatch") {
    const std::vector<Ranking> rs{Ranking::from_ranks({1, 2}), Ranking::from_ranks({1, 2, 3})};
    CHECK_THROWS_AS(competition_graph(rs), InvalidArgument);
  }
}

TEST_CASE("ROID on Table 1") {
  const auto rs = table1_rankings();
  const RoidTable roid = roid_from_rankings(rs);
  for (std::size_t v = 0; v < 10; ++v) {
    CAPTURE(v + 1);
    CHECK(std::round(roid.roid[v] * 1e4) / 1e4 == doctest::Approx(table1::kRoid[v]).epsilon(1e-12));
  }
  CHECK(aggregate_rankings(rs).rank == table1::kAggregatedRank);
}

TEST_CASE("ROID of a node ranked first everywhere") {
  std::mt19937_64 rng(5);
  for (std::size_t m = 1; m <= 4; ++m) {
    std::vector<Ranking> rs;
    for (std::size_t i = 0; i < m; ++i) {
      auto r = random_ranking(8, rng);
      // Swap node 0 into first place.
      const NodeId top = r.order[0];
      std::swap(r.rank[0], r.rank[top]);
      rs.push_back(Ranking::from_ranks(r.rank));
    }
    CHECK(roid_from_rankings(rs).roid[0] == doctest::Approx(static_cast<double>(m * 7 + 1)));
  }
}

TEST_CASE("property: closed-form ROID equals competition-graph sums") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 11;
    std::vector<Ranking> rs;
    for (std::size_t m = 0; m < 1 + static_cast<std::size_t>(trial % 5); ++m) rs.push_back(random_ranking(n, rng));
    const RoidTable a = roid_scores(competition_graph(rs));
    const RoidTable b = roid_from_rankings(rs);
    CHECK(a.out_degree == b.out_degree);
    CHECK(a.in_degree == b.in_degree);
    CHECK(a.roid == b.roid);
  }
}

TEST_CASE("aggregation properties") {
  std::mt19937_64 rng(23);
  SUBCASE("one ranking is returned unchanged") {
    for (int i = 0; i < 10; ++i) {
      const std::vector<Ranking> one{random_ranking(12, rng)};
      CHECK(aggregate_rankings(one) == one[0]);
    }
  }
  SUBCASE("identical rankings") {
    const Ranking r = random_ranking(15, rng);
    const std::vector<Ranking> same{r, r, r};
    CHECK(aggregate_rankings(same) == r);
  }
  SUBCASE("order of criteria does not matter") {
    auto rs = table1_rankings();
    const Ranking want = aggregate_rankings(rs);
    std::sort(rs.begin(), rs.end(), [](const Ranking& a, const Ranking& b) { return a.rank < b.rank; });
    do {
      CHECK(aggregate_rankings(rs) == want);
    } while (std::next_permutation(rs.begin(), rs.end(),
                                   [](const Ranking& a, const Ranking& b) { return a.rank < b.rank; }));
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(aggregate_rankings(std::vector<Ranking>{}), InvalidArgument);
  }
}

TEST_CASE("candidate count") {
  CHECK(candidate_count(10, 2, 0.25) == 4);
  CHECK(candidate_count(12, 2, 0.25) == 5);  // 4.5 rounds up
  CHECK(candidate_count(10, 3, 0.0) == 3);
  CHECK(candidate_count(10, 3, 1.0) == 10);
  CHECK(candidate_count(1000, 3, 0.05) == 53);
  CHECK_THROWS_AS(candidate_count(10, 11, 0.1), InvalidArgument);
  CHECK_THROWS_AS(candidate_count(10, 2, 1.5), InvalidArgument);
  CHECK_THROWS_AS(candidate_count(10, 2, -0.1), InvalidArgument);
}

TEST_CASE("candidate set on Table 1") {
  const auto rs = table1_rankings();
  const Ranking consensus = aggregate_rankings(rs);
  CHECK(candidate_set(consensus, 2, 0.25) == NodeSet({1, 2, 7, 8}, 10));
  CHECK(candidate_set(consensus, 2, 1.0).size() == 10);
  CHECK(candidate_set(consensus, 2, 0.0) == NodeSet({1, 2}, 10));
  CHECK_THROWS_AS(candidate_set(consensus, 0, 0.5), InvalidArgument);
}

TEST_CASE("property: candidate sets are nested in alpha") {
  const Graph g = newman_watts(80, 4, 0.2, 3);
  const auto criteria = parse_criteria("DBE");
  const Ranking r = aggregated_ranking(g, criteria);
  NodeSet previous = candidate_set(r, 3, 0.0);
  for (double alpha : {0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
    const NodeSet next = candidate_set(r, 3, alpha);
    CHECK(std::includes(next.begin(), next.end(), previous.begin(), previous.end()));
    previous = next;
  }
}

TEST_CASE("overlap analysis") {
  SUBCASE("identical combos overlap fully") {
    const Graph g = newman_watts(50, 4, 0.2, 1);
    const std::vector<std::string> combos{"D", "D"};
    const OverlapReport rep = overlap_analysis(g, combos, 10);
    CHECK(rep.pairwise[0][1] == 10);
    CHECK(rep.common.size() == 10);
  }
  SUBCASE("complete graph: every combo picks the lowest ids") {
    const std::vector<std::string> combos{"D", "B", "E", "C", "S", "DBE"};
    const OverlapReport rep = overlap_analysis(complete_graph(12), combos, 4);
    for (const auto& e : rep.entries) CHECK(e.candidates == NodeSet({0, 1, 2, 3}, 12));
  }
  SUBCASE("matches direct recomputation") {
    const Graph g = newman_watts(60, 4, 0.3, 9);
    const std::vector<std::string> combos{"D", "DB", "DBE"};
    const OverlapReport rep = overlap_analysis(g, combos, 8);
    NodeSet common = rep.entries[0].candidates;
    for (std::size_t i = 0; i < combos.size(); ++i) {
      const auto crit = parse_criteria(combos[i]);
      const NodeSet direct = top_nodes(aggregated_ranking(g, crit), 8);
      CHECK(rep.entries[i].candidates == direct);
      std::vector<NodeId> both;
      std::set_intersection(common.begin(), common.end(), direct.begin(), direct.end(), std::back_inserter(both));
      common = NodeSet(both);
    }
    CHECK(rep.common == common);
  }
  SUBCASE("errors") {
    const std::vector<std::string> bad{"DX"};
    CHECK_THROWS_AS(overlap_analysis(complete_graph(5), bad, 2), InvalidArgument);
    const std::vector<std::string> ok{"D"};
    CHECK_THROWS_AS(overlap_analysis(complete_graph(5), ok, 6), InvalidArgument);
  }
}
