#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semnet/bigraph.hpp"
#include "semnet/util.hpp"

namespace semnet {

// Average nearest-neighbors degree; nullopt for isolated nodes.
std::vector<std::optional<double>> annd(const MonoGraph& g);

// Fraction of neighbor pairs that are themselves linked; nullopt for
// degree < 2.
std::vector<std::optional<double>> clustering_coefficient(const MonoGraph& g);

// Betweenness over ordered node pairs, endpoints excluded, no normalization
// (Brandes single-source accumulation). The parallel version distributes
// sources over threads but reduces in fixed source order, so its output is
// bitwise identical to the serial reference.
std::vector<double> betweenness(const MonoGraph& g);
std::vector<double> betweenness_serial(const MonoGraph& g);

struct MetricsReport {
  std::int64_t node_count = 0;
  std::int64_t edge_count = 0;
  double mean_degree = 0.0;  // 2L/N
  std::vector<int> degree;
  std::vector<std::optional<double>> annd;
  std::vector<std::optional<double>> clustering;
  std::vector<double> betweenness;
};

MetricsReport summarize(const MonoGraph& g);
std::string metrics_report_json(const MonoGraph& g, const MetricsReport& r);

// Fraction of corpus days (full range, empty days included) on which each
// hashtag appears in the daily bipartite graph. Sorted descending.
std::vector<std::pair<std::string, double>> hashtag_persistence(
    const std::map<Date, BipartiteGraph>& daily, int total_days);

// Fraction of corpus days each label triangle is fully present in the daily
// projections; triples never closed on any day are absent.
std::vector<std::pair<std::array<std::string, 3>, double>> triadic_persistence(
    const std::map<Date, MonoGraph>& daily, int total_days);

// Assignment of non-verified users to verified communities when the largest
// neighbor-community share reaches the threshold. Ties stay unassigned.
struct PolarizationAssignment {
  struct Entry {
    int community = -1;
    double rho = 0.0;
  };
  std::map<std::string, Entry> assigned;  // non-verified user -> result
};

PolarizationAssignment polarization(const BipartiteGraph& retweet_graph,
                                    const std::map<std::string, int>& verified_community,
                                    double threshold);

std::string polarization_json(const PolarizationAssignment& a);

}  // namespace semnet
