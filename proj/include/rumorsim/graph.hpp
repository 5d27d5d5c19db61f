#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rumorsim {

using NodeId = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u;
  NodeId v;
  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph on nodes 0..node_count-1.
///
/// Neighbor lists are kept sorted, so iteration order (and everything seeded
/// from it) is independent of insertion order.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Inserts {u, v}. Returns false if the edge already exists.
  /// Throws ParameterError on a self-loop or an out-of-range id.
  bool add_edge(NodeId u, NodeId v);
  bool remove_edge(NodeId u, NodeId v);
  bool has_edge(NodeId u, NodeId v) const;

  std::span<const NodeId> neighbors(NodeId n) const { return adjacency_.at(n); }
  std::size_t degree(NodeId n) const { return adjacency_.at(n).size(); }

  /// All edges with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  /// Node labels (agent names); empty when unlabeled.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  void check_node(NodeId n) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
  std::vector<std::string> labels_;
};

}  // namespace rumorsim
