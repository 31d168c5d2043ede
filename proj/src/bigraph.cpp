#include "semnet/bigraph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "semnet/util.hpp"

namespace semnet {

namespace {

void check_unique(const std::vector<std::string>& labels, const char* layer) {
  std::vector<std::string> s = labels;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument(std::string("duplicate label in ") + layer + " layer");
}

}  // namespace

BipartiteGraph BipartiteGraph::from_edges(std::vector<std::string> top_labels,
                                          std::vector<std::string> bottom_labels,
                                          const std::vector<std::pair<int, int>>& edges) {
  check_unique(top_labels, "top");
  check_unique(bottom_labels, "bottom");
  BipartiteGraph g;
  g.top_labels = std::move(top_labels);
  g.bottom_labels = std::move(bottom_labels);
  g.top_adj.resize(g.top_labels.size());
  g.bottom_adj.resize(g.bottom_labels.size());
  for (auto [i, a] : edges) {
    if (i < 0 || i >= g.num_top() || a < 0 || a >= g.num_bottom())
      throw std::out_of_range("bipartite edge index out of range");
    g.top_adj[i].push_back(a);
  }
  for (auto& nb : g.top_adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  for (int i = 0; i < g.num_top(); ++i)
    for (int a : g.top_adj[i]) g.bottom_adj[a].push_back(i);
  for (auto& nb : g.bottom_adj) std::sort(nb.begin(), nb.end());
  return g;
}

std::int64_t BipartiteGraph::num_edges() const {
  std::int64_t n = 0;
  for (const auto& nb : top_adj) n += static_cast<std::int64_t>(nb.size());
  return n;
}

bool BipartiteGraph::has_edge(int i, int alpha) const {
  const auto& nb = top_adj.at(i);
  return std::binary_search(nb.begin(), nb.end(), alpha);
}

BipartiteGraph BipartiteGraph::transposed() const {
  BipartiteGraph g;
  g.top_labels = bottom_labels;
  g.bottom_labels = top_labels;
  g.top_adj = bottom_adj;
  g.bottom_adj = top_adj;
  return g;
}

MonoGraph MonoGraph::from_edges(std::vector<std::string> labels, std::vector<Edge> edges) {
  check_unique(labels, "node");
  MonoGraph g;
  g.labels = std::move(labels);
  const int n = g.num_nodes();
  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw std::out_of_range("edge index out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop not allowed");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  g.edges = std::move(edges);
  g.adj.resize(n);
  for (const auto& e : g.edges) {
    g.adj[e.u].push_back(e.v);
    g.adj[e.v].push_back(e.u);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  return g;
}

std::vector<int> MonoGraph::degree() const {
  std::vector<int> d(num_nodes());
  for (int i = 0; i < num_nodes(); ++i) d[i] = static_cast<int>(adj[i].size());
  return d;
}

bool MonoGraph::has_edge(int u, int v) const {
  const auto& nb = adj.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<int> degrees(const BipartiteGraph& g, Layer layer) {
  const auto& adj = layer == Layer::top ? g.top_adj : g.bottom_adj;
  std::vector<int> d(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) d[i] = static_cast<int>(adj[i].size());
  return d;
}

std::int64_t vmotif_count(const BipartiteGraph& g, int alpha, int beta) {
  if (alpha == beta) throw std::invalid_argument("vmotif_count: identical bottom nodes");
  const auto& a = g.bottom_adj.at(alpha);
  const auto& b = g.bottom_adj.at(beta);
  std::int64_t count = 0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      ++count, ++ia, ++ib;
  }
  return count;
}

std::vector<std::pair<std::pair<int, int>, std::int64_t>> vmotif_pairs(const BipartiteGraph& g) {
  std::unordered_map<std::uint64_t, std::int64_t> counts;
  for (const auto& nb : g.top_adj) {
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        ++counts[(static_cast<std::uint64_t>(nb[i]) << 32) | static_cast<std::uint32_t>(nb[j])];
  }
  std::vector<std::pair<std::pair<int, int>, std::int64_t>> out;
  out.reserve(counts.size());
  for (const auto& [key, c] : counts)
    out.push_back({{static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu)}, c});
  std::sort(out.begin(), out.end());
  return out;
}

MonoGraph naive_projection(const BipartiteGraph& g, Layer layer) {
  const BipartiteGraph* gp = &g;
  BipartiteGraph t;
  if (layer == Layer::top) {
    t = g.transposed();
    gp = &t;
  }
  std::vector<MonoGraph::Edge> edges;
  for (const auto& [pair, c] : vmotif_pairs(*gp))
    edges.push_back({pair.first, pair.second, static_cast<double>(c)});
  return MonoGraph::from_edges(gp->bottom_labels, std::move(edges));
}

void write_bipartite_tsv(std::ostream& os, const BipartiteGraph& g) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (int i = 0; i < g.num_top(); ++i)
    for (int a : g.top_adj[i]) rows.emplace_back(g.top_labels[i], g.bottom_labels[a]);
  std::sort(rows.begin(), rows.end());
  for (const auto& [t, b] : rows) os << t << '\t' << b << '\n';
}

BipartiteGraph read_bipartite_tsv(std::istream& is) {
  std::map<std::string, int> top, bot;
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(lineno, "expected two tab-separated labels");
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    top.emplace(rows.back().first, 0);
    bot.emplace(rows.back().second, 0);
  }
  std::vector<std::string> tl, bl;
  for (auto& [k, v] : top) v = static_cast<int>(tl.size()), tl.push_back(k);
  for (auto& [k, v] : bot) v = static_cast<int>(bl.size()), bl.push_back(k);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(rows.size());
  for (const auto& [t, b] : rows) edges.emplace_back(top[t], bot[b]);
  return BipartiteGraph::from_edges(std::move(tl), std::move(bl), edges);
}

void write_mono_tsv(std::ostream& os, const MonoGraph& g) {
  std::vector<std::tuple<std::string, std::string, double>> rows;
  for (const auto& e : g.edges) {
    std::string a = g.labels[e.u], b = g.labels[e.v];
    if (b < a) std::swap(a, b);
    rows.emplace_back(std::move(a), std::move(b), e.weight);
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [a, b, w] : rows) os << a << '\t' << b << '\t' << format_double(w) << '\n';
}

MonoGraph read_mono_tsv(std::istream& is) {
  std::map<std::string, int> ids;
  std::vector<std::tuple<std::string, std::string, double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, w;
    if (!std::getline(ls, a, '\t') || !std::getline(ls, b, '\t') || !std::getline(ls, w, '\t'))
      throw ParseError(lineno, "expected label_a<TAB>label_b<TAB>weight");
    rows.emplace_back(a, b, std::stod(w));
    ids.emplace(a, 0);
    ids.emplace(b, 0);
  }
  std::vector<std::string> labels;
  for (auto& [k, v] : ids) v = static_cast<int>(labels.size()), labels.push_back(k);
  std::vector<MonoGraph::Edge> edges;
  for (const auto& [a, b, w] : rows) edges.push_back({ids[a], ids[b], w});
  return MonoGraph::from_edges(std::move(labels), std::move(edges));
}

}  // namespace semnet
