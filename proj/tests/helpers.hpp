#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "netdis/graph.hpp"

namespace netdis::test {

/// G(N, p) with its own generator, independent of the library generators.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

inline Graph graph_of(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
  return Graph::from_edges(n, edges);
}

}  // namespace netdis::test
