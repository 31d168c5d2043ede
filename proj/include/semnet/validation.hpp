#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "semnet/bigraph.hpp"
#include "semnet/nullmodels.hpp"

namespace semnet {

// P(X >= n_star) for X a sum of independent Bernoulli(probs[j]) trials.
// Stable PMF convolution with an absorbing >=n_star state, O(n * n_star).
double poisson_binomial_sf(std::span<const double> probs, int n_star);

// P(X >= n_star) for X ~ Binomial(n, p); log-space term accumulation.
double binomial_sf(int n, double p, int n_star);

struct PairPValue {
  int alpha = 0;
  int beta = 0;
  std::int64_t observed = 0;
  double pvalue = 1.0;
};

// Tail probability of the observed co-neighbor count of bottom nodes
// (alpha, beta) under the null model: Poisson-Binomial for the BiCM,
// Binomial for the BiPCM / BiRGM.
PairPValue pair_pvalue(const BipartiteGraph& g, const NullModel& model, int alpha, int beta);

// P-values for every bottom pair with V* > 0, sorted by (alpha, beta).
// Pairs are independent; computed in parallel with a fixed output order.
std::vector<PairPValue> all_pair_pvalues(const BipartiteGraph& g, const NullModel& model);

// all_pair_pvalues with the parallel region disabled; kept as the reference
// path for the benchmark and the determinism tests.
std::vector<PairPValue> all_pair_pvalues_serial(const BipartiteGraph& g, const NullModel& model);

struct FdrResult {
  std::int64_t m = 0;             // number of hypotheses
  double single_test_level = 0.0; // t
  std::size_t threshold_index = 0;  // largest i with p_i <= i*t/m (1-based), 0 if none
  double threshold_pvalue = 0.0;
  std::vector<PairPValue> kept;   // sorted by (alpha, beta)
};

// Benjamini-Hochberg selection. `m` counts all hypotheses; pairs missing
// from `pvalues` are implicit p = 1. Pairs tied with the threshold p-value
// are kept.
FdrResult fdr_select(std::vector<PairPValue> pvalues, std::int64_t m, double t = 0.05);

struct ValidatedProjection {
  MonoGraph graph;  // bottom-layer nodes; edges = FDR-kept pairs, weight V*
  FdrResult fdr;
};

ValidatedProjection validated_projection(const BipartiteGraph& g, const NullModel& model,
                                         double t = 0.05);

// TSV: label_a <TAB> label_b <TAB> V_star <TAB> pvalue.
void write_validated_tsv(std::ostream& os, const BipartiteGraph& g, const FdrResult& fdr);
std::string fdr_summary_json(const FdrResult& fdr);

}  // namespace semnet
