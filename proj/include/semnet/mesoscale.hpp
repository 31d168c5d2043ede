#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "semnet/bigraph.hpp"

namespace semnet {

struct Partition {
  std::vector<int> labels;  // node -> community id, compacted from 0
  int num_communities = 0;
  double modularity = 0.0;
};

// Q = (1/2L) sum_ij [a_ij - k_i k_j / 2L] delta(c_i, c_j), ordered pairs,
// i = j included. Throws on an edgeless graph.
double modularity(const MonoGraph& g, std::span<const int> labels);

// Greedy two-phase Louvain; node visit order is reshuffled per restart by
// the seeded generator and the best-scoring run wins (ties: earliest run).
// Deterministic for a fixed seed.
Partition louvain(const MonoGraph& g, std::uint64_t seed, int restarts = 10);

// Iterative pruning: coreness = k iff the node is in the k-core but not the
// (k+1)-core.
std::vector<int> kcore_decomposition(const MonoGraph& g);

// Nodes in the maximal shell (coreness == max over nodes).
std::vector<int> innermost_shell(const MonoGraph& g);

struct CorePeripheryAssignment {
  std::vector<bool> core;  // node -> in core?
  double log_surprise = 0.0;
  std::int64_t V = 0, V_core = 0, V_per = 0;
  std::int64_t L = 0, l_core = 0, l_per = 0;
};

// Natural log of the cumulative multivariate-hypergeometric tail scoring a
// core/periphery split; always <= 0. Impossible terms contribute zero.
double bimodular_surprise(const MonoGraph& g, const std::vector<bool>& core);

// Same tail from the pair/link counts alone.
double bimodular_surprise_counts(std::int64_t V, std::int64_t V_core, std::int64_t V_per,
                                 std::int64_t L, std::int64_t l_core, std::int64_t l_per);

// Stochastic local search for the split minimizing the log-surprise: start
// from the degree-median split, greedily flip single labels, accept sideways
// moves with seeded probability, keep the best of `restarts` runs.
CorePeripheryAssignment detect_core_periphery(const MonoGraph& g, std::uint64_t seed,
                                              int restarts = 10);

// |A n B| / |A u B|; 1 when both sets are empty.
double core_jaccard(std::vector<int> a, std::vector<int> b);

std::string partition_json(const MonoGraph& g, const Partition& p);
std::string core_periphery_json(const MonoGraph& g, const CorePeripheryAssignment& cp);

}  // namespace semnet
