#include "netdis/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <unordered_set>
#include <vector>

#include "netdis/error.hpp"

namespace netdis {

namespace {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

class LinkSet {
 public:
  explicit LinkSet(std::size_t n) : n_(n) {}
  bool insert(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    if (!keys_.insert(std::uint64_t{u} * n_ + v).second) return false;
    edges_.emplace_back(u, v);
    return true;
  }
  std::size_t size() const { return edges_.size(); }
  const EdgeList& edges() const { return edges_; }

 private:
  std::size_t n_;
  std::unordered_set<std::uint64_t> keys_;
  EdgeList edges_;
};

}  // namespace

std::string to_string(GraphFamily f) {
  switch (f) {
    case GraphFamily::newman_watts: return "NW";
    case GraphFamily::scale_free: return "SF";
    case GraphFamily::complete: return "complete";
    case GraphFamily::star: return "star";
    case GraphFamily::path: return "path";
    case GraphFamily::ring: return "ring";
  }
  return "?";
}

GraphFamily parse_graph_family(const std::string& s) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "nw" || t == "newman_watts") return GraphFamily::newman_watts;
  if (t == "sf" || t == "scale_free") return GraphFamily::scale_free;
  if (t == "complete") return GraphFamily::complete;
  if (t == "star") return GraphFamily::star;
  if (t == "path") return GraphFamily::path;
  if (t == "ring") return GraphFamily::ring;
  throw InvalidArgument("unknown graph family '" + s + "'");
}

void GeneratorSpec::validate() const {
  switch (family) {
    case GraphFamily::newman_watts:
    case GraphFamily::ring:
      if (neighbors % 2 != 0 || neighbors >= node_count) {
        throw InvalidArgument("lattice neighbor count K must be even and below N");
      }
      if (!(shortcut_probability >= 0.0 && shortcut_probability <= 1.0)) {
        throw InvalidArgument("shortcut probability must lie in [0,1]");
      }
      break;
    case GraphFamily::scale_free:
      if (!(gamma > 2.0)) throw InvalidArgument("degree exponent must exceed 2");
      if (node_count < 10) throw InvalidArgument("scale-free generator needs N >= 10");
      if (!(mean_degree > 0.0) || mean_degree >= static_cast<double>(node_count - 1)) {
        throw InvalidArgument("mean degree must lie in (0, N-1)");
      }
      break;
    default:
      if (node_count < 1) throw InvalidArgument("fixture needs N >= 1");
  }
}

Graph newman_watts(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  GeneratorSpec{GraphFamily::newman_watts, n, k, p}.validate();
  LinkSet links(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d <= k / 2; ++d) {
      links.insert(static_cast<NodeId>(i), static_cast<NodeId>((i + d) % n));
    }
  }
  const std::size_t lattice_links = links.size();
  const std::size_t max_links = n * (n - 1) / 2;

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  for (std::size_t e = 0; e < lattice_links; ++e) {
    if (!coin(rng)) continue;
    if (links.size() == max_links) {
      throw InvalidArgument("no unconnected pair left for a shortcut");
    }
    while (true) {
      NodeId u = pick(rng);
      NodeId v = pick(rng);
      if (u != v && links.insert(u, v)) break;
    }
  }
  return Graph::from_edges(n, links.edges());
}

Graph scale_free(std::size_t n, double gamma, std::uint64_t seed, double mean_degree) {
  GeneratorSpec spec{GraphFamily::scale_free, n};
  spec.gamma = gamma;
  spec.mean_degree = mean_degree;
  spec.validate();

  const double exponent = std::isinf(gamma) ? 0.0 : 1.0 / (gamma - 1.0);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = std::pow(static_cast<double>(i + 1), -exponent);

  const auto target = static_cast<std::size_t>(std::llround(mean_degree * static_cast<double>(n) / 2.0));
  const std::size_t max_attempts = 1000 * target + 10000;

  std::mt19937_64 rng(seed);
  std::discrete_distribution<NodeId> pick(weights.begin(), weights.end());
  LinkSet links(n);
  std::size_t attempts = 0;
  while (links.size() < target) {
    if (++attempts > max_attempts) {
      throw InvalidArgument("scale-free generator could not place " + std::to_string(target) +
                            " links after " + std::to_string(max_attempts) + " draws");
    }
    NodeId u = pick(rng);
    NodeId v = pick(rng);
    if (u != v) links.insert(u, v);
  }
  return Graph::from_edges(n, links.edges());
}

Graph complete_graph(std::size_t n) {
  EdgeList e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

Graph star_graph(std::size_t n) {
  if (n < 2) throw InvalidArgument("star needs N >= 2");
  EdgeList e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(0, v);
  return Graph::from_edges(n, e);
}

Graph path_graph(std::size_t n) {
  if (n < 1) throw InvalidArgument("path needs N >= 1");
  EdgeList e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return Graph::from_edges(n, e);
}

Graph ring_graph(std::size_t n, std::size_t k) {
  if (n < 3) throw InvalidArgument("ring needs N >= 3");
  return newman_watts(n, k, 0.0, 0);
}

Graph fixture(GraphFamily family, std::size_t n) {
  switch (family) {
    case GraphFamily::complete:
      if (n < 1) throw InvalidArgument("complete graph needs N >= 1");
      return complete_graph(n);
    case GraphFamily::star: return star_graph(n);
    case GraphFamily::path: return path_graph(n);
    case GraphFamily::ring: return ring_graph(n, 2);
    default: throw InvalidArgument("fixture() covers complete/star/path/ring only");
  }
}

Graph generate(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case GraphFamily::newman_watts:
      return newman_watts(spec.node_count, spec.neighbors, spec.shortcut_probability, spec.seed);
    case GraphFamily::scale_free:
      return scale_free(spec.node_count, spec.gamma, spec.seed, spec.mean_degree);
    case GraphFamily::ring: return ring_graph(spec.node_count, spec.neighbors);
    default: return fixture(spec.family, spec.node_count);
  }
}

}  // namespace netdis
