#include "netdis/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "netdis/error.hpp"

namespace netdis {

Graph Graph::from_edges(std::size_t node_count,
                        std::span<const std::pair<NodeId, NodeId>> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != node_count) {
    throw InvalidArgument("label count " + std::to_string(labels.size()) +
                          " does not match node count " + std::to_string(node_count));
  }
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(2 * edges.size());
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw InvalidArgument("edge endpoint out of range");
    }
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (auto [u, v] : arcs) ++g.offsets_[u + 1];
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.reserve(arcs.size());
  for (auto [u, v] : arcs) g.adjacency_.push_back(v);

  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
  }
  g.labels_ = std::move(labels);
  return g;
}

std::size_t Graph::degree(NodeId v) const {
  if (v >= node_count()) throw InvalidArgument("node id " + std::to_string(v) + " out of range");
  return offsets_[v + 1] - offsets_[v];
}

bool Graph::has_link(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(link_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw InvalidArgument("node set contains duplicate ids");
  }
}

NodeSet::NodeSet(std::vector<NodeId> ids, std::size_t node_count) : NodeSet(std::move(ids)) {
  if (!ids_.empty() && ids_.back() >= node_count) {
    throw InvalidArgument("node id " + std::to_string(ids_.back()) + " out of range for N=" +
                          std::to_string(node_count));
  }
}

bool NodeSet::contains(NodeId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

StrategyVector::StrategyVector(const NodeSet& set, std::size_t node_count) : bits_(node_count, 0) {
  for (NodeId v : set) {
    if (v >= node_count) throw InvalidArgument("node id out of range for strategy vector");
    bits_[v] = 1;
  }
}

std::size_t StrategyVector::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

NodeSet StrategyVector::to_node_set() const {
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) ids.push_back(static_cast<NodeId>(i));
  }
  return NodeSet(std::move(ids), bits_.size());
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace

Graph parse_edge_list(std::istream& in, ParseStats* stats) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  ParseStats local;

  auto intern = [&](std::string& token) {
    auto [it, inserted] = ids.try_emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(std::move(token));
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError("expected 2 node tokens, found " + std::to_string(tokens.size()), line_no);
    }
    ++local.lines;
    NodeId u = intern(tokens[0]);
    NodeId v = intern(tokens[1]);
    if (u == v) {
      ++local.dropped_loops;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (labels.empty()) throw ParseError("edge list is empty", 0);

  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  local.dropped_duplicates = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());

  if (stats) *stats = local;
  std::size_t n = labels.size();
  return Graph::from_edges(n, edges, std::move(labels));
}

Graph parse_edge_list(const std::string& text, ParseStats* stats) {
  std::istringstream in(text);
  return parse_edge_list(in, stats);
}

Graph read_edge_list_file(const std::string& path, ParseStats* stats) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open edge list '" + path + "'");
  return parse_edge_list(in, stats);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

Subgraph remove_nodes(const Graph& g, const NodeSet& removed) {
  const std::size_t n = g.node_count();
  if (!removed.empty() && removed.ids().back() >= n) {
    throw InvalidArgument("node id " + std::to_string(removed.ids().back()) +
                          " out of range for N=" + std::to_string(n));
  }
  constexpr NodeId kGone = ~NodeId{0};
  std::vector<NodeId> new_id(n, kGone);
  Subgraph out;
  out.original_id.reserve(n - removed.size());
  std::vector<std::string> labels;
  labels.reserve(n - removed.size());
  for (NodeId v = 0; v < n; ++v) {
    if (removed.contains(v)) continue;
    new_id[v] = static_cast<NodeId>(out.original_id.size());
    out.original_id.push_back(v);
    labels.push_back(g.label(v));
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (auto [u, v] : g.edges()) {
    if (new_id[u] != kGone && new_id[v] != kGone) edges.emplace_back(new_id[u], new_id[v]);
  }
  out.graph = Graph::from_edges(out.original_id.size(), edges, std::move(labels));
  return out;
}

}  // namespace netdis
