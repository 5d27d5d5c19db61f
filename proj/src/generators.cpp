#include "rumorsim/generators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "rumorsim/error.hpp"
#include "rumorsim/rng.hpp"

namespace rumorsim {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw ParameterError("erdos_renyi requires n >= 1");
  check_probability(p, "p");
  Graph g(n);
  Rng rng(seed);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) g.add_edge(i, j);
    }
  }
  return g;
}

Graph scale_free(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw ParameterError("scale_free requires m >= 1");
  if (m >= n) {
    throw ParameterError("scale_free requires m < n (m=" + std::to_string(m) +
                         ", n=" + std::to_string(n) + ")");
  }
  Graph g(n);
  Rng rng(seed);
  // Every edge contributes both endpoints, so a uniform pick from this list
  // is a degree-proportional pick over the nodes.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * m * (n - m));
  std::vector<NodeId> targets;
  std::vector<char> chosen(n, 0);

  for (auto arriving = static_cast<NodeId>(m); arriving < n; ++arriving) {
    targets.clear();
    if (endpoints.empty()) {
      for (NodeId s = 0; s < m; ++s) targets.push_back(s);
    } else {
      while (targets.size() < m) {
        const NodeId t = endpoints[rng.uniform_below(endpoints.size())];
        if (!chosen[t]) {
          chosen[t] = 1;
          targets.push_back(t);
        }
      }
    }
    for (NodeId t : targets) {
      chosen[t] = 0;
      g.add_edge(arriving, t);
      endpoints.push_back(arriving);
      endpoints.push_back(t);
    }
  }
  return g;
}

Graph small_world(std::size_t n, std::size_t k, double beta, std::uint64_t seed) {
  if (k % 2 != 0) throw ParameterError("small_world requires an even k, got " + std::to_string(k));
  if (k >= n) {
    throw ParameterError("small_world requires k < n (k=" + std::to_string(k) +
                         ", n=" + std::to_string(n) + ")");
  }
  check_probability(beta, "beta");
  Graph g(n);
  const std::size_t half = k / 2;
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= half; ++j) g.add_edge(u, static_cast<NodeId>((u + j) % n));
  }

  Rng rng(seed);
  std::vector<NodeId> candidates;
  candidates.reserve(n);
  // Offset-major sweep, one pass per lattice distance.
  for (std::size_t j = 1; j <= half; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      if (!rng.bernoulli(beta)) continue;
      const auto v = static_cast<NodeId>((u + j) % n);
      if (!g.has_edge(u, v) || g.degree(u) >= n - 1) continue;
      candidates.clear();
      for (NodeId w = 0; w < n; ++w) {
        if (w != u && !g.has_edge(u, w)) candidates.push_back(w);
      }
      const NodeId w = candidates[rng.uniform_below(candidates.size())];
      g.remove_edge(u, v);
      g.add_edge(u, w);
    }
  }
  return g;
}

}  // namespace rumorsim
