#pragma once

// Shared fixture builders for the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semnet/bigraph.hpp"

namespace semnet::testing {

inline std::vector<std::string> make_labels(const std::string& prefix, int n) {
  std::vector<std::string> out(n);
  for (int i = 0; i < n; ++i) out[i] = prefix + std::to_string(i);
  return out;
}

inline BipartiteGraph random_bipartite(int nt, int nb, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nt; ++i)
    for (int a = 0; a < nb; ++a)
      if (unif(rng) < density) edges.emplace_back(i, a);
  return BipartiteGraph::from_edges(make_labels("u", nt), make_labels("h", nb), edges);
}

inline MonoGraph random_mono(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<MonoGraph::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unif(rng) < density) edges.push_back({u, v, 1.0});
  return MonoGraph::from_edges(make_labels("n", n), std::move(edges));
}

inline MonoGraph mono_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<MonoGraph::Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
  return MonoGraph::from_edges(make_labels("n", n), std::move(edges));
}

// Heavy-tailed user activity and hashtag popularity plus a few planted
// co-use groups; degree heterogeneity is what separates the null models.
inline BipartiteGraph heterogeneous_bipartite(int nt, int nb, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> act(nt), pop(nb);
  for (int i = 0; i < nt; ++i) act[i] = std::pow(i + 1.0, -0.8);
  for (int a = 0; a < nb; ++a) pop[a] = std::pow(a + 1.0, -0.9);
  std::shuffle(act.begin(), act.end(), rng);
  std::shuffle(pop.begin(), pop.end(), rng);
  double mean = 0.0;
  for (int i = 0; i < nt; ++i)
    for (int a = 0; a < nb; ++a) mean += act[i] * pop[a];
  mean /= static_cast<double>(nt) * nb;
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < nt; ++i)
    for (int a = 0; a < nb; ++a)
      if (unif(rng) < std::min(0.9, 0.08 * act[i] * pop[a] / mean)) edges.insert({i, a});
  std::uniform_int_distribution<int> pick_h(0, nb - 1), pick_u(0, nt - 1);
  for (int grp = 0; grp < 5; ++grp) {
    std::vector<int> hs;
    while (hs.size() < 3) {
      const int h = pick_h(rng);
      if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(h);
    }
    for (int k = 0; k < 12; ++k) {
      const int u = pick_u(rng);
      for (int h : hs) edges.insert({u, h});
    }
  }
  return BipartiteGraph::from_edges(make_labels("u", nt), make_labels("h", nb),
                                    {edges.begin(), edges.end()});
}

// Two hashtag blocks with camp-structured usage: a camp user co-uses any
// own-block pair with probability `within` and any cross pair with
// probability `cross`.
inline BipartiteGraph planted_two_block(int users_per_camp, int tags_per_block, double within,
                                        double cross, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double q = std::sqrt(within);
  const double r = cross / q;
  const int nt = 2 * users_per_camp, nb = 2 * tags_per_block;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nt; ++i) {
    const int camp = i < users_per_camp ? 0 : 1;
    for (int a = 0; a < nb; ++a) {
      const int block = a < tags_per_block ? 0 : 1;
      if (unif(rng) < (camp == block ? q : r)) edges.push_back({i, a});
    }
  }
  return BipartiteGraph::from_edges(make_labels("u", nt), make_labels("h", nb), edges);
}

inline int block_of(const BipartiteGraph& g, int bottom_index, int tags_per_block) {
  (void)g;
  return bottom_index < tags_per_block ? 0 : 1;
}

// Is the graph connected (ignoring isolated-node-free requirement)?
inline bool connected(const MonoGraph& g) {
  const int n = g.num_nodes();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : g.adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

}  // namespace semnet::testing
