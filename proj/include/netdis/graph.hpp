#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netdis {

using NodeId = std::uint32_t;

/**
 * Simple undirected unweighted graph in compressed sparse row form.
 *
 * Nodes are dense ids 0..N-1. Every node carries a label (the token it had in
 * the source file, or its id as text for generated graphs). Neighbor lists are
 * sorted ascending. The object is immutable once built, so concurrent readers
 * need no synchronization.
 */
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary link list. Loops are dropped and duplicate or
  /// reversed links collapsed. Labels default to the decimal id.
  static Graph from_edges(std::size_t node_count,
                          std::span<const std::pair<NodeId, NodeId>> edges,
                          std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t link_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const;
  bool has_link(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// All links as (u, v) with u < v, ascending.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return adjacency_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::string> labels_;
};

/// Sorted set of distinct node ids.
class NodeSet {
 public:
  NodeSet() = default;
  /// Sorts and validates; throws InvalidArgument on duplicates or ids >= node_count.
  NodeSet(std::vector<NodeId> ids, std::size_t node_count);
  /// Sorts and rejects duplicates without a range check.
  explicit NodeSet(std::vector<NodeId> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(NodeId v) const;
  std::span<const NodeId> ids() const noexcept { return ids_; }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  NodeId operator[](std::size_t i) const { return ids_[i]; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend auto operator<=>(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> ids_;
};

/// Bit indicator x_i over all N nodes; popcount is the disintegration strength.
class StrategyVector {
 public:
  explicit StrategyVector(std::size_t node_count) : bits_(node_count, 0) {}
  StrategyVector(const NodeSet& set, std::size_t node_count);

  std::size_t size() const noexcept { return bits_.size(); }
  bool test(NodeId v) const { return bits_[v] != 0; }
  void set(NodeId v, bool on = true) { bits_.at(v) = on ? 1 : 0; }
  std::size_t popcount() const;
  NodeSet to_node_set() const;

 private:
  std::vector<std::uint8_t> bits_;
};

struct ParseStats {
  std::size_t lines = 0;
  std::size_t dropped_loops = 0;
  std::size_t dropped_duplicates = 0;
};

/// Reads a whitespace- or comma-separated edge list. Lines starting with '#'
/// or '%' are comments. Labels are densified in first-appearance order.
Graph parse_edge_list(std::istream& in, ParseStats* stats = nullptr);
Graph parse_edge_list(const std::string& text, ParseStats* stats = nullptr);
Graph read_edge_list_file(const std::string& path, ParseStats* stats = nullptr);

/// One "u v" label pair per link, ascending ids. Isolated nodes are not written.
void write_edge_list(std::ostream& out, const Graph& g);

/// Residual graph after deleting nodes; original_id maps new ids back.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> original_id;
};

Subgraph remove_nodes(const Graph& g, const NodeSet& removed);

inline std::size_t degree(const Graph& g, NodeId v) { return g.degree(v); }

}  // namespace netdis
