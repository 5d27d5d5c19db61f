#pragma once

#include <cstddef>
#include <vector>

#include "rumorsim/graph.hpp"

namespace rumorsim {

/// Structural summary of a graph. Path statistics cover the largest
/// connected component only; `component_count` says how many there are.
struct NetworkProperties {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double avg_degree = 0.0;
  double avg_path_length = 0.0;
  std::size_t diameter = 0;
  double avg_clustering = 0.0;
  std::size_t component_count = 0;
  std::size_t largest_component_size = 0;
};

/// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

/// Per-node clustering 2·T(v) / (deg·(deg−1)); nodes of degree < 2 get 0.
std::vector<double> local_clustering(const Graph& g);

NetworkProperties network_properties(const Graph& g);

}  // namespace rumorsim
