#include <doctest.h>

#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "netdis/centrality.hpp"
#include "netdis/error.hpp"
#include "netdis/generators.hpp"

using namespace netdis;

namespace {

constexpr long kUnreached = -1;

std::vector<std::vector<long>> all_pairs_distances(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<long>> d(n, std::vector<long>(n, kUnreached));
  for (NodeId s = 0; s < n; ++s) {
    d[s][s] = 0;
    std::vector<NodeId> layer{s};
    for (long depth = 1; !layer.empty(); ++depth) {
      std::vector<NodeId> next;
      for (NodeId v : layer) {
        for (NodeId u : g.neighbors(v)) {
          if (d[s][u] == kUnreached) {
            d[s][u] = depth;
            next.push_back(u);
          }
        }
      }
      layer = std::move(next);
    }
  }
  return d;
}

/// Number of shortest s-t paths, counted by walking down distance layers.
double count_paths(const Graph& g, const std::vector<std::vector<long>>& d, NodeId s, NodeId t) {
  if (s == t) return 1.0;
  double total = 0.0;
  for (NodeId u : g.neighbors(t)) {
    if (d[s][u] == d[s][t] - 1) total += count_paths(g, d, s, u);
  }
  return total;
}

/// Betweenness by definition: sum over unordered pairs of sigma_st(v) / sigma_st.
std::vector<double> brute_betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  const auto d = all_pairs_distances(g);
  std::vector<double> bc(n, 0.0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      if (d[s][t] == kUnreached) continue;
      const double total = count_paths(g, d, s, t);
      for (NodeId v = 0; v < n; ++v) {
        if (v == s || v == t || d[s][v] == kUnreached || d[v][t] == kUnreached) continue;
        if (d[s][v] + d[v][t] != d[s][t]) continue;
        bc[v] += count_paths(g, d, s, v) * count_paths(g, d, v, t) / total;
      }
    }
  }
  if (n > 2) {
    for (double& x : bc) x *= 2.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  }
  return bc;
}

Eigen::MatrixXd adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  return a;
}

}  // namespace

TEST_CASE("criterion tags") {
  CHECK(parse_criteria("DBE") ==
        std::vector<Criterion>{Criterion::degree, Criterion::betweenness, Criterion::eigenvector});
  CHECK(criteria_string(parse_criteria("SC")) == "SC");
  CHECK_THROWS_AS(parse_criteria(""), InvalidArgument);
  CHECK_THROWS_AS(parse_criteria("DX"), InvalidArgument);
  CHECK_THROWS_AS(parse_criteria("DD"), InvalidArgument);
}

TEST_CASE("degree centrality") {
  CHECK(degree_centrality(star_graph(4)).score == std::vector<double>{3, 1, 1, 1});
  for (double s : degree_centrality(complete_graph(5)).score) CHECK(s == 4.0);
  const Graph g = parse_edge_list("h a\nh b\nh c\nh d\nh e\n");
  CHECK(degree_centrality(g).score[0] == 5.0);
}

TEST_CASE("betweenness: closed forms") {
  const auto star = betweenness_centrality(star_graph(4)).score;
  CHECK(star[0] == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i) CHECK(star[i] == doctest::Approx(0.0));
  CHECK(betweenness_centrality(path_graph(3)).score[1] == doctest::Approx(1.0));
  for (double s : betweenness_centrality(complete_graph(6)).score) CHECK(s == doctest::Approx(0.0));
}

TEST_CASE("betweenness matches path-counting oracle") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Graph g = test::random_graph(12, 0.3, seed);
    const auto got = betweenness_centrality(g).score;
    const auto want = brute_betweenness(g);
    for (std::size_t v = 0; v < g.node_count(); ++v) CHECK(got[v] == doctest::Approx(want[v]).epsilon(1e-12));
  }
}

TEST_CASE("eigenvector: closed forms") {
  const auto star = eigenvector_centrality(star_graph(4)).score;
  CHECK(star[0] == doctest::Approx(std::sqrt(3.0) / std::sqrt(6.0)).epsilon(1e-8));
  for (int i = 1; i < 4; ++i) CHECK(star[i] == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-8));
  for (double s : eigenvector_centrality(complete_graph(7)).score) {
    CHECK(s == doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-10));
  }
  const auto ring = eigenvector_centrality(ring_graph(6, 2)).score;
  for (double s : ring) CHECK(s == doctest::Approx(ring[0]).epsilon(1e-12));
  CHECK_THROWS_AS(eigenvector_centrality(Graph::from_edges(3, {})), InvalidArgument);
}

TEST_CASE("eigenvector matches dense eigensolver") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = newman_watts(40, 4, 0.3, seed);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency(g));
    Eigen::VectorXd u = es.eigenvectors().col(es.eigenvectors().cols() - 1);
    if (u.sum() < 0) u = -u;
    const auto got = eigenvector_centrality(g).score;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      CHECK(got[v] == doctest::Approx(u(static_cast<Eigen::Index>(v))).epsilon(1e-6));
    }
  }
}

TEST_CASE("closeness") {
  for (double s : closeness_centrality(complete_graph(5)).score) CHECK(s == doctest::Approx(1.0));
  const auto p3 = closeness_centrality(path_graph(3)).score;
  CHECK(p3[1] == doctest::Approx(1.0));
  CHECK(p3[0] == doctest::Approx(0.75));
  CHECK(p3[2] == doctest::Approx(0.75));
  const Graph isolated = Graph::from_edges(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
  CHECK(closeness_centrality(isolated).score[2] == 0.0);
}

TEST_CASE("closeness matches harmonic sum over BFS distances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = test::random_graph(15, 0.2, seed);
    const auto d = all_pairs_distances(g);
    const auto got = closeness_centrality(g).score;
    for (NodeId v = 0; v < 15; ++v) {
      double sum = 0.0;
      for (NodeId u = 0; u < 15; ++u) {
        if (u != v && d[v][u] != kUnreached) sum += 1.0 / static_cast<double>(d[v][u]);
      }
      CHECK(got[v] == doctest::Approx(sum / 14.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("subgraph centrality") {
  for (double s : subgraph_centrality(Graph::from_edges(4, {})).score) CHECK(s == doctest::Approx(1.0));
  for (double s : subgraph_centrality(complete_graph(2)).score) CHECK(s == doctest::Approx(std::cosh(1.0)));
}

TEST_CASE("subgraph centrality matches the walk series") {
  const Graph g = test::random_graph(10, 0.3, 3);
  const Eigen::MatrixXd a = adjacency(g);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(10, 10);
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = term * a / k;
    sum += term;
  }
  const auto got = subgraph_centrality(g).score;
  double total = 0.0;
  for (Eigen::Index v = 0; v < 10; ++v) {
    CHECK(got[static_cast<std::size_t>(v)] == doctest::Approx(sum(v, v)).epsilon(1e-9));
    total += got[static_cast<std::size_t>(v)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  CHECK(total == doctest::Approx(es.eigenvalues().array().exp().sum()).epsilon(1e-10));
}

TEST_CASE("rank_from_scores") {
  SUBCASE("Table 1 value columns give the Table 1 rank columns") {
    const std::vector<double> dc{4, 5, 5, 4, 5, 4, 4, 5, 5, 5};
    const std::vector<double> bc{0.0093, 0.0694, 0.0926, 0.0648, 0.0880, 0.0278, 0.0324, 0.0926, 0.1065, 0.0556};
    const std::vector<double> ec{0.3002, 0.3483, 0.3431, 0.2717, 0.3165, 0.2557, 0.2689, 0.3324, 0.3459, 0.3591};
    CHECK(rank_from_scores(dc).rank == std::vector<std::size_t>{7, 1, 2, 8, 3, 9, 10, 4, 5, 6});
    CHECK(rank_from_scores(bc).rank == std::vector<std::size_t>{10, 5, 2, 6, 4, 9, 8, 3, 1, 7});
    CHECK(rank_from_scores(ec).rank == std::vector<std::size_t>{7, 2, 4, 8, 6, 10, 9, 5, 3, 1});
  }
  SUBCASE("ties by id") {
    const std::vector<double> equal(5, 2.0);
    const Ranking r = rank_from_scores(equal);
    CHECK(r.order == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK(r.rank == std::vector<std::size_t>{1, 2, 3, 4, 5});
  }
  SUBCASE("rounding noise still ties") {
    const std::vector<double> noisy{0.5, 0.5 + 1e-16, 0.5 - 1e-16, 0.25};
    CHECK(rank_from_scores(noisy).order == std::vector<NodeId>{0, 1, 2, 3});
  }
  SUBCASE("strictly decreasing") {
    const std::vector<double> dec{9, 7, 5, 3};
    CHECK(rank_from_scores(dec).rank == std::vector<std::size_t>{1, 2, 3, 4});
  }
  SUBCASE("non-finite") {
    const std::vector<double> bad{1.0, std::nan("")};
    CHECK_THROWS_AS(rank_from_scores(bad), InvalidArgument);
  }
  SUBCASE("from_ranks validation") {
    CHECK_THROWS_AS(Ranking::from_ranks({1, 1, 3}), InvalidArgument);
    CHECK_THROWS_AS(Ranking::from_ranks({0, 1, 2}), InvalidArgument);
    CHECK(Ranking::from_ranks({2, 3, 1}).order == std::vector<NodeId>{2, 0, 1});
  }
}

TEST_CASE("property: scores are nonnegative and finite") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = newman_watts(30, 4, 0.2, seed);
    for (char tag : std::string("DBECS")) {
      const auto t = compute_centrality(g, parse_criterion(tag));
      CHECK(t.score.size() == 30);
      for (double s : t.score) {
        CHECK(std::isfinite(s));
        CHECK(s >= 0.0);
      }
    }
  }
}

TEST_CASE("property: relabelling permutes scores") {
  const Graph g = test::random_graph(14, 0.3, 8);
  std::vector<NodeId> perm(14);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[2], perm[9]);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  const Graph h = Graph::from_edges(14, edges);
  for (char tag : std::string("DBCS")) {
    const auto a = compute_centrality(g, parse_criterion(tag)).score;
    const auto b = compute_centrality(h, parse_criterion(tag)).score;
    for (NodeId v = 0; v < 14; ++v) CHECK(b[perm[v]] == doctest::Approx(a[v]).epsilon(1e-10));
  }
}
