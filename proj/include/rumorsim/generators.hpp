#pragma once

#include <cstddef>
#include <cstdint>

#include "rumorsim/graph.hpp"

namespace rumorsim {

/// G(n, p): every unordered pair {i, j}, i < j, visited in lexicographic
/// order and kept with probability p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Barabási–Albert preferential attachment. Starts from m isolated nodes;
/// each later node links to m distinct existing nodes chosen with
/// probability proportional to degree (the first arrival, seeing only
/// degree-0 seeds, picks all of them). Produces exactly m·(n−m) edges.
Graph scale_free(std::size_t n, std::size_t m, std::uint64_t seed);

/// Watts–Strogatz: ring lattice with k/2 neighbors per side, then each
/// lattice edge (u, u+j) is rewired with probability beta to a uniformly
/// chosen non-neighbor of u. The edge count n·k/2 is preserved.
Graph small_world(std::size_t n, std::size_t k, double beta, std::uint64_t seed);

}  // namespace rumorsim
