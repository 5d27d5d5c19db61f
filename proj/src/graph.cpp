#include "rumorsim/graph.hpp"

#include <algorithm>

#include "rumorsim/error.hpp"

namespace rumorsim {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

void Graph::check_node(NodeId n) const {
  if (n >= adjacency_.size()) {
    throw ParameterError("node id " + std::to_string(n) + " out of range for graph of " +
                         std::to_string(adjacency_.size()) + " nodes");
  }
}

bool Graph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) throw ParameterError("self-loop on node " + std::to_string(u));
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it == nu.end() || *it != v) return false;
  nu.erase(it);
  auto& nv = adjacency_[v];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
  --edge_count_;
  return true;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != adjacency_.size()) {
    throw ParameterError("label count " + std::to_string(labels.size()) +
                         " does not match node count " + std::to_string(adjacency_.size()));
  }
  labels_ = std::move(labels);
}

}  // namespace rumorsim
