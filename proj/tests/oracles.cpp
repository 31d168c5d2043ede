#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "semnet/mesoscale.hpp"
#include "semnet/util.hpp"

namespace semnet::oracle {

double exact_pb_sf(std::span<const double> probs, int n_star) {
  const int n = static_cast<int>(probs.size());
  if (n > 20) throw BudgetExceeded("exact_pb_sf: more than 20 trials");
  long double tail = 0.0L;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<int>(std::popcount(mask)) < n_star) continue;
    long double p = 1.0L;
    for (int j = 0; j < n; ++j)
      p *= (mask >> j) & 1 ? static_cast<long double>(probs[j])
                           : 1.0L - static_cast<long double>(probs[j]);
    tail += p;
  }
  return static_cast<double>(tail);
}

int edit_distance_dp(std::string_view a, std::string_view b) {
  const auto ca = utf8_decode(a);
  const auto cb = utf8_decode(b);
  const std::size_t n = ca.size(), m = cb.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (ca[i - 1] != cb[j - 1])});
  return d[n][m];
}

std::int64_t vmotif_brute(const BipartiteGraph& g, int alpha, int beta) {
  std::set<int> a(g.bottom_adj.at(alpha).begin(), g.bottom_adj.at(alpha).end());
  std::int64_t c = 0;
  for (int j : g.bottom_adj.at(beta)) c += a.count(j);
  return c;
}

std::vector<int> canonical_labels(std::vector<int> labels) {
  int maxc = 0;
  for (int c : labels) maxc = std::max(maxc, c);
  std::vector<int> remap(maxc + 1, -1);
  int next = 0;
  for (auto& c : labels) {
    if (remap[c] == -1) remap[c] = next++;
    c = remap[c];
  }
  return labels;
}

namespace {

// Enumerates set partitions via restricted growth strings.
template <typename F>
void for_each_partition(int n, F&& visit) {
  std::vector<int> a(n, 0), maxes(n, 0);
  while (true) {
    visit(a);
    int i = n - 1;
    for (; i > 0; --i) {
      if (a[i] <= maxes[i - 1]) break;
    }
    if (i == 0) return;
    ++a[i];
    maxes[i] = std::max(maxes[i], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      maxes[j] = maxes[i];
    }
  }
}

}  // namespace

BestPartition exhaustive_best_partition(const MonoGraph& g, Objective objective) {
  const int n = g.num_nodes();
  BestPartition best;
  best.score = -std::numeric_limits<double>::infinity();
  auto consider = [&](const std::vector<int>& labels, double score) {
    if (score > best.score + 1e-12) {
      best.score = score;
      best.labels = labels;
      best.optima.clear();
      best.optima.push_back(canonical_labels(labels));
    } else if (score >= best.score - 1e-12) {
      best.optima.push_back(canonical_labels(labels));
    }
  };

  if (objective == Objective::modularity) {
    if (n > 10) throw BudgetExceeded("exhaustive modularity: more than 10 nodes");
    for_each_partition(n, [&](const std::vector<int>& a) { consider(a, modularity(g, a)); });
  } else {
    if (n > 16) throw BudgetExceeded("exhaustive bimodular: more than 16 nodes");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<bool> core(n);
      std::vector<int> labels(n);
      for (int i = 0; i < n; ++i) {
        core[i] = (mask >> i) & 1;
        labels[i] = core[i] ? 1 : 0;
      }
      consider(labels, -bimodular_surprise(g, core));
    }
  }
  return best;
}

std::vector<double> enumerate_geodesic_betweenness(const MonoGraph& g) {
  const int n = g.num_nodes();
  if (n > 8) throw BudgetExceeded("geodesic enumeration: more than 8 nodes");
  // all-pairs BFS distances and shortest-path counts
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (int s = 0; s < n; ++s) {
    dist[s][s] = 0;
    sigma[s][s] = 1.0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g.adj[u]) {
        if (dist[s][v] < 0) {
          dist[s][v] = dist[s][u] + 1;
          q.push(v);
        }
        if (dist[s][v] == dist[s][u] + 1) sigma[s][v] += sigma[s][u];
      }
    }
  }
  std::vector<double> bc(n, 0.0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || dist[s][t] < 0) continue;
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (dist[s][v] >= 0 && dist[v][t] >= 0 && dist[s][v] + dist[v][t] == dist[s][t])
          bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
  return bc;
}

std::vector<double> annd_direct(const MonoGraph& g) {
  const int n = g.num_nodes();
  std::vector<double> out(n, -1.0);
  for (int u = 0; u < n; ++u) {
    double k = 0.0, s = 0.0;
    for (int v = 0; v < n; ++v) {
      if (v == u || !g.has_edge(u, v)) continue;
      k += 1.0;
      s += static_cast<double>(g.adj[v].size());
    }
    if (k > 0) out[u] = s / k;
  }
  return out;
}

std::vector<double> clustering_direct(const MonoGraph& g) {
  const int n = g.num_nodes();
  std::vector<double> out(n, -1.0);
  for (int u = 0; u < n; ++u) {
    const double k = static_cast<double>(g.adj[u].size());
    if (k < 2) continue;
    double closed = 0.0;  // ordered neighbor pairs that are linked
    for (int v : g.adj[u])
      for (int w : g.adj[u])
        if (v != w && g.has_edge(v, w)) closed += 1.0;
    out[u] = closed / (k * (k - 1.0));
  }
  return out;
}

std::vector<std::size_t> fdr_naive(const std::vector<double>& pvalues, std::int64_t m, double t) {
  std::vector<std::size_t> order(pvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });
  double threshold = -1.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double bh = static_cast<double>(i + 1) * t / static_cast<double>(m);
    if (pvalues[order[i]] <= bh) threshold = pvalues[order[i]];
  }
  std::vector<std::size_t> kept;
  if (threshold < 0) return kept;
  for (std::size_t i = 0; i < pvalues.size(); ++i)
    if (pvalues[i] <= threshold) kept.push_back(i);
  return kept;
}

namespace {

__int128 binom128(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: product of i consecutive ints divisible by i!
  }
  return r;
}

}  // namespace

double exact_bimodular_surprise(std::int64_t V, std::int64_t V_core, std::int64_t V_per,
                                std::int64_t L, std::int64_t l_core, std::int64_t l_per) {
  if (V > 40) throw BudgetExceeded("exact surprise: V larger than 40");
  const std::int64_t R = V - V_core - V_per;
  long double tail = 0.0L;
  const long double denom = static_cast<long double>(binom128(V, L));
  for (std::int64_t i = l_core; i <= V_core; ++i)
    for (std::int64_t j = l_per; j <= V_per; ++j) {
      if (i + j > L || L - i - j > R) continue;
      tail += static_cast<long double>(binom128(V_core, i)) *
              static_cast<long double>(binom128(V_per, j)) *
              static_cast<long double>(binom128(R, L - i - j));
    }
  return static_cast<double>(std::log(tail / denom));
}

}  // namespace semnet::oracle
