#include "semnet/metrics.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include <json.hpp>

namespace semnet {

std::vector<std::optional<double>> annd(const MonoGraph& g) {
  const auto deg = g.degree();
  std::vector<std::optional<double>> out(g.num_nodes());
  for (int u = 0; u < g.num_nodes(); ++u) {
    if (deg[u] == 0) continue;
    double s = 0.0;
    for (int v : g.adj[u]) s += deg[v];
    out[u] = s / deg[u];
  }
  return out;
}

std::vector<std::optional<double>> clustering_coefficient(const MonoGraph& g) {
  const auto deg = g.degree();
  std::vector<std::optional<double>> out(g.num_nodes());
  for (int u = 0; u < g.num_nodes(); ++u) {
    if (deg[u] < 2) continue;
    std::int64_t links = 0;
    const auto& nb = g.adj[u];
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (g.has_edge(nb[i], nb[j])) ++links;
    out[u] = static_cast<double>(links) / (deg[u] * (deg[u] - 1.0) / 2.0);
  }
  return out;
}

namespace {

// Brandes dependency accumulation for one source; adds into `delta`.
void brandes_source(const MonoGraph& g, int s, std::vector<double>& delta) {
  const int n = g.num_nodes();
  std::vector<int> dist(n, -1), stack;
  std::vector<double> sigma(n, 0.0), dep(n, 0.0);
  stack.reserve(n);
  std::queue<int> q;
  dist[s] = 0;
  sigma[s] = 1.0;
  q.push(s);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    stack.push_back(u);
    for (int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
      if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
    }
  }
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const int w = *it;
    for (int v : g.adj[w])
      if (dist[v] == dist[w] + 1) dep[w] += sigma[w] / sigma[v] * (1.0 + dep[v]);
    if (w != s) delta[w] += dep[w];
  }
}

}  // namespace

std::vector<double> betweenness_serial(const MonoGraph& g) {
  std::vector<double> bc(g.num_nodes(), 0.0);
  for (int s = 0; s < g.num_nodes(); ++s) brandes_source(g, s, bc);
  return bc;
}

std::vector<double> betweenness(const MonoGraph& g) {
  const int n = g.num_nodes();
  std::vector<double> bc(n, 0.0);
  constexpr int kBlock = 32;
  std::vector<std::vector<double>> slot(kBlock);
  for (int base = 0; base < n; base += kBlock) {
    const int lim = std::min(n, base + kBlock);
#pragma omp parallel for schedule(dynamic, 1)
    for (int s = base; s < lim; ++s) {
      auto& d = slot[s - base];
      d.assign(n, 0.0);
      brandes_source(g, s, d);
    }
    // fixed source order keeps the floating-point sum identical to the
    // serial path for any thread count
    for (int s = base; s < lim; ++s)
      for (int v = 0; v < n; ++v) bc[v] += slot[s - base][v];
  }
  return bc;
}

MetricsReport summarize(const MonoGraph& g) {
  MetricsReport r;
  r.node_count = g.num_nodes();
  r.edge_count = g.num_edges();
  r.mean_degree = r.node_count ? 2.0 * r.edge_count / static_cast<double>(r.node_count) : 0.0;
  r.degree = g.degree();
  r.annd = annd(g);
  r.clustering = clustering_coefficient(g);
  r.betweenness = betweenness(g);
  return r;
}

std::string metrics_report_json(const MonoGraph& g, const MetricsReport& r) {
  nlohmann::json per_node = nlohmann::json::object();
  for (int i = 0; i < g.num_nodes(); ++i) {
    nlohmann::json n;
    n["degree"] = r.degree[i];
    n["annd"] = r.annd[i] ? nlohmann::json(*r.annd[i]) : nlohmann::json(nullptr);
    n["clustering"] = r.clustering[i] ? nlohmann::json(*r.clustering[i]) : nlohmann::json(nullptr);
    n["betweenness"] = r.betweenness[i];
    per_node[g.labels[i]] = n;
  }
  nlohmann::json j;
  j["node_count"] = r.node_count;
  j["edge_count"] = r.edge_count;
  j["mean_degree"] = r.mean_degree;
  j["per_node"] = per_node;
  return j.dump(2);
}

std::vector<std::pair<std::string, double>> hashtag_persistence(
    const std::map<Date, BipartiteGraph>& daily, int total_days) {
  if (total_days < 1) throw std::invalid_argument("total_days must be >= 1");
  std::map<std::string, int> days_present;
  for (const auto& [day, g] : daily)
    for (int a = 0; a < g.num_bottom(); ++a)
      if (!g.bottom_adj[a].empty()) ++days_present[g.bottom_labels[a]];
  std::vector<std::pair<std::string, double>> out;
  out.reserve(days_present.size());
  for (const auto& [tag, c] : days_present)
    out.emplace_back(tag, static_cast<double>(c) / total_days);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

std::vector<std::pair<std::array<std::string, 3>, double>> triadic_persistence(
    const std::map<Date, MonoGraph>& daily, int total_days) {
  if (total_days < 1) throw std::invalid_argument("total_days must be >= 1");
  std::map<std::array<std::string, 3>, int> days_closed;
  for (const auto& [day, g] : daily) {
    for (const auto& e : g.edges) {
      // common neighbors w > v close a triangle (u < v < w by adjacency order)
      const int u = e.u, v = e.v;
      const auto& nu = g.adj[u];
      const auto& nv = g.adj[v];
      std::vector<int> common;
      std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                            std::back_inserter(common));
      for (int w : common) {
        if (w <= v) continue;
        std::array<std::string, 3> key{g.labels[u], g.labels[v], g.labels[w]};
        std::sort(key.begin(), key.end());
        ++days_closed[key];
      }
    }
  }
  std::vector<std::pair<std::array<std::string, 3>, double>> out;
  out.reserve(days_closed.size());
  for (const auto& [key, c] : days_closed)
    out.emplace_back(key, static_cast<double>(c) / total_days);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

PolarizationAssignment polarization(const BipartiteGraph& retweet_graph,
                                    const std::map<std::string, int>& verified_community,
                                    double threshold) {
  PolarizationAssignment out;
  for (int u = 0; u < retweet_graph.num_bottom(); ++u) {
    const auto& neighbors = retweet_graph.bottom_adj[u];
    if (neighbors.empty()) continue;
    std::map<int, int> share;  // community -> neighbor count
    for (int v : neighbors) {
      const auto it = verified_community.find(retweet_graph.top_labels[v]);
      if (it != verified_community.end()) ++share[it->second];
    }
    int best = -1, best_count = 0;
    bool tie = false;
    for (const auto& [c, cnt] : share) {
      if (cnt > best_count) {
        best = c;
        best_count = cnt;
        tie = false;
      } else if (cnt == best_count) {
        tie = true;
      }
    }
    if (best < 0 || tie) continue;
    const double rho = static_cast<double>(best_count) / static_cast<double>(neighbors.size());
    if (rho < threshold) continue;
    out.assigned[retweet_graph.bottom_labels[u]] = {best, rho};
  }
  return out;
}

std::string polarization_json(const PolarizationAssignment& a) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [user, e] : a.assigned)
    j[user] = {{"community", e.community}, {"rho", e.rho}};
  return j.dump(2);
}

}  // namespace semnet
