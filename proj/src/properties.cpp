#include "rumorsim/properties.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "rumorsim/kernels/kernels.hpp"

namespace rumorsim {

namespace {

/// Row-per-node adjacency bitsets, so |N(u) ∩ N(v)| is one and-popcount.
class AdjacencyBits {
 public:
  explicit AdjacencyBits(const Graph& g)
      : words_((g.node_count() + 63) / 64), bits_(g.node_count() * words_, 0) {
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v : g.neighbors(u)) bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
  std::span<const std::uint64_t> row(NodeId u) const {
    return {bits_.data() + u * words_, words_};
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<NodeId>> components;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

std::vector<double> local_clustering(const Graph& g) {
  const AdjacencyBits bits(g);
  std::vector<double> cc(g.node_count(), 0.0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::size_t d = g.degree(u);
    if (d < 2) continue;
    // Each triangle at u is seen once from each of its two other corners.
    std::uint64_t twice_triangles = 0;
    for (NodeId v : g.neighbors(u)) twice_triangles += kernels::and_popcount(bits.row(u), bits.row(v));
    cc[u] = static_cast<double>(twice_triangles) / static_cast<double>(d * (d - 1));
  }
  return cc;
}

NetworkProperties network_properties(const Graph& g) {
  NetworkProperties props;
  props.node_count = g.node_count();
  props.edge_count = g.edge_count();
  if (props.node_count == 0) return props;
  props.avg_degree = 2.0 * static_cast<double>(props.edge_count) / static_cast<double>(props.node_count);

  const auto cc = local_clustering(g);
  props.avg_clustering = std::accumulate(cc.begin(), cc.end(), 0.0) / static_cast<double>(cc.size());

  const auto components = connected_components(g);
  props.component_count = components.size();
  const auto& largest = *std::max_element(
      components.begin(), components.end(),
      [](const auto& a, const auto& b) { return a.size() < b.size(); });
  props.largest_component_size = largest.size();
  if (largest.size() < 2) return props;

  // BFS from every node of the largest component.
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<NodeId> queue(g.node_count());
  constexpr auto kUnseen = static_cast<std::uint32_t>(-1);
  std::uint64_t total = 0;
  std::size_t diameter = 0;
  for (NodeId s : largest) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::size_t head = 0;
    std::size_t tail = 0;
    dist[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      const NodeId u = queue[head++];
      total += dist[u];
      diameter = std::max<std::size_t>(diameter, dist[u]);
      for (NodeId v : g.neighbors(u)) {
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          queue[tail++] = v;
        }
      }
    }
  }
  const double pairs = static_cast<double>(largest.size()) * static_cast<double>(largest.size() - 1);
  props.avg_path_length = static_cast<double>(total) / pairs;
  props.diameter = diameter;
  return props;
}

}  // namespace rumorsim
