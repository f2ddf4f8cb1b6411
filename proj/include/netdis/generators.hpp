#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "netdis/graph.hpp"

namespace netdis {

enum class GraphFamily { newman_watts, scale_free, complete, star, path, ring };

std::string to_string(GraphFamily f);
/// Accepts "NW", "SF", "complete", "star", "path", "ring" (case-insensitive).
GraphFamily parse_graph_family(const std::string& s);

struct GeneratorSpec {
  GraphFamily family = GraphFamily::newman_watts;
  std::size_t node_count = 1000;
  std::size_t neighbors = 6;  // K, ring lattice degree (NW, ring)
  double shortcut_probability = 0.2;  // p (NW)
  double gamma = 3.0;  // degree exponent (SF); +inf gives uniform weights
  double mean_degree = 6.0;  // SF link budget W = mean_degree * N / 2
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Ring lattice with K/2 neighbors per side, then one shortcut with
/// probability p per lattice link between a uniformly chosen unconnected pair.
Graph newman_watts(std::size_t n, std::size_t k, double p, std::uint64_t seed);

/// Static-model scale-free graph: node i has weight (i+1)^(-1/(gamma-1)) and
/// link endpoints are drawn proportional to weight until the link budget is met.
Graph scale_free(std::size_t n, double gamma, std::uint64_t seed, double mean_degree = 6.0);

Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t n);  // node 0 is the center
Graph path_graph(std::size_t n);
/// Ring lattice where every node links to k/2 neighbors on each side.
Graph ring_graph(std::size_t n, std::size_t k = 2);

Graph fixture(GraphFamily family, std::size_t n);
Graph generate(const GeneratorSpec& spec);

}  // namespace netdis
