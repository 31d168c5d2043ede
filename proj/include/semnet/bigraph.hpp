#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace semnet {

enum class Layer { top, bottom };

// Binary biadjacency between two node layers. Neighbor lists are kept
// sorted on both sides; repeated edges collapse to one.
struct BipartiteGraph {
  std::vector<std::string> top_labels;
  std::vector<std::string> bottom_labels;
  std::vector<std::vector<int>> top_adj;     // top index -> sorted bottom indices
  std::vector<std::vector<int>> bottom_adj;  // bottom index -> sorted top indices

  static BipartiteGraph from_edges(std::vector<std::string> top_labels,
                                   std::vector<std::string> bottom_labels,
                                   const std::vector<std::pair<int, int>>& edges);

  int num_top() const { return static_cast<int>(top_labels.size()); }
  int num_bottom() const { return static_cast<int>(bottom_labels.size()); }
  std::int64_t num_edges() const;
  bool has_edge(int i, int alpha) const;

  BipartiteGraph transposed() const;
};

// Undirected simple graph on one layer. `edges` is the canonical
// representation (u < v, sorted); `adj` is derived.
struct MonoGraph {
  struct Edge {
    int u, v;
    double weight = 1.0;
  };

  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj;

  static MonoGraph from_edges(std::vector<std::string> labels, std::vector<Edge> edges);

  int num_nodes() const { return static_cast<int>(labels.size()); }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges.size()); }
  std::vector<int> degree() const;
  bool has_edge(int u, int v) const;
};

std::vector<int> degrees(const BipartiteGraph& g, Layer layer);

// V*_ab: number of top-layer nodes adjacent to both bottom nodes a and b.
std::int64_t vmotif_count(const BipartiteGraph& g, int alpha, int beta);

// All bottom-layer pairs (a < b) with V*_ab > 0 and their counts, sorted.
// Enumerates co-neighbors of each top node, so absent pairs never materialize.
std::vector<std::pair<std::pair<int, int>, std::int64_t>> vmotif_pairs(const BipartiteGraph& g);

// Links any two same-layer nodes sharing at least one neighbor; edge weight
// carries the co-neighbor count.
MonoGraph naive_projection(const BipartiteGraph& g, Layer layer);

// TSV: top_label <TAB> bottom_label, one edge per line.
void write_bipartite_tsv(std::ostream& os, const BipartiteGraph& g);
BipartiteGraph read_bipartite_tsv(std::istream& is);

// TSV: label_a <TAB> label_b <TAB> weight.
void write_mono_tsv(std::ostream& os, const MonoGraph& g);
MonoGraph read_mono_tsv(std::istream& is);

}  // namespace semnet
