#pragma once

// Independent re-implementation of the rule-agent dynamics, used to check the
// engine. It keeps integer exposure counts per (agent, rumor) instead of post
// histories, prompts and parsing; posts are either a rumor's exact text or a
// neutral message. Only the random streams are shared with the engine, since
// the draws themselves define the run.

#include <cstdint>
#include <optional>
#include <vector>

#include "rumorsim/graph.hpp"
#include "rumorsim/rng.hpp"

namespace oracle {

struct Agent {
  int acc = 1;
  int spread = 1;
};

struct Setup {
  std::vector<std::vector<std::uint32_t>> adjacency;  // any order
  std::vector<Agent> agents;
  std::size_t rumors = 4;
  std::uint64_t iterations = 0;
  std::uint64_t master_seed = 0;
  bool degree_init = false;
  bool degree_activation = false;
  std::size_t seeds_per_rumor = 1;
};

struct Result {
  std::vector<std::vector<double>> beliefs;          // [agent][rumor]
  std::vector<std::uint32_t> actors;                 // acting agent per step
  std::vector<std::vector<std::size_t>> believers;   // [t][rumor], t = 0..T
};

inline std::optional<int> exposures_needed(int acc) {
  switch (acc) {
    case 2: return 3;
    case 3: return 2;
    case 4: return 1;
    default: return std::nullopt;
  }
}

inline Setup from_graph(const rumorsim::Graph& g) {
  Setup s;
  s.adjacency.resize(g.node_count());
  for (const auto& e : g.edges()) {
    s.adjacency[e.u].push_back(e.v);
    s.adjacency[e.v].push_back(e.u);
  }
  return s;
}

inline Result simulate(const Setup& s) {
  const std::size_t n = s.agents.size();
  const std::size_t L = s.rumors;
  std::vector<std::vector<int>> seen(n, std::vector<int>(L, 0));

  rumorsim::Rng seeding = rumorsim::stream(s.master_seed, "seeding");
  for (std::size_t j = 0; j < L; ++j) {
    std::vector<std::uint32_t> chosen;
    if (s.degree_init) {
      // Highest degree first, lower id on ties.
      std::vector<bool> taken(n, false);
      for (std::size_t c = 0; c < s.seeds_per_rumor; ++c) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (taken[i]) continue;
          if (best == n || s.adjacency[i].size() > s.adjacency[best].size()) best = i;
        }
        taken[best] = true;
        chosen.push_back(static_cast<std::uint32_t>(best));
      }
    } else {
      std::vector<std::uint32_t> pool(n);
      for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
      for (std::size_t c = 0; c < s.seeds_per_rumor; ++c) {
        const std::size_t r = c + seeding.uniform_below(n - c);
        std::swap(pool[c], pool[r]);
        chosen.push_back(pool[c]);
      }
    }
    for (auto a : chosen) ++seen[a][j];
  }

  std::uint64_t total_degree = 0;
  for (const auto& adj : s.adjacency) total_degree += adj.size();

  Result res;
  res.beliefs.assign(n, std::vector<double>(L, 0.0));
  res.believers.push_back(std::vector<std::size_t>(L, 0));
  rumorsim::Rng act = rumorsim::stream(s.master_seed, "activation");
  for (std::uint64_t t = 0; t < s.iterations; ++t) {
    std::uint32_t a = 0;
    if (s.degree_activation && total_degree > 0) {
      std::uint64_t r = act.uniform_below(total_degree);
      while (r >= s.adjacency[a].size()) {
        r -= s.adjacency[a].size();
        ++a;
      }
    } else {
      a = static_cast<std::uint32_t>(act.uniform_below(n));
    }
    res.actors.push_back(a);

    const auto need = exposures_needed(s.agents[a].acc);
    std::optional<std::size_t> post;
    for (std::size_t j = 0; j < L; ++j) {
      const bool believes = need && seen[a][j] >= *need;
      res.beliefs[a][j] = believes ? 1.0 : 0.0;
      if (believes && (!post || seen[a][j] > seen[a][*post])) post = j;
    }
    if (post && s.agents[a].spread >= 2) {
      ++seen[a][*post];
      for (auto f : s.adjacency[a]) ++seen[f][*post];
    }
    std::vector<std::size_t> count(L, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < L; ++j) count[j] += res.beliefs[i][j] >= 0.5;
    }
    res.believers.push_back(count);
  }
  return res;
}

}  // namespace oracle
