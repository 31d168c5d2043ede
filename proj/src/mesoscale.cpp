#include "semnet/mesoscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "semnet/util.hpp"

namespace semnet {

double modularity(const MonoGraph& g, std::span<const int> labels) {
  const int n = g.num_nodes();
  if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("labels size mismatch");
  const double L = static_cast<double>(g.num_edges());
  if (L < 1) throw std::invalid_argument("modularity undefined on an edgeless graph");
  int maxc = 0;
  for (int c : labels) maxc = std::max(maxc, c);
  std::vector<double> internal(maxc + 1, 0.0), dc(maxc + 1, 0.0);
  const auto deg = g.degree();
  for (const auto& e : g.edges)
    if (labels[e.u] == labels[e.v]) internal[labels[e.u]] += 1.0;
  for (int i = 0; i < n; ++i) dc[labels[i]] += deg[i];
  double q = 0.0;
  for (int c = 0; c <= maxc; ++c) q += internal[c] / L - (dc[c] / (2.0 * L)) * (dc[c] / (2.0 * L));
  return q;
}

namespace {

// Aggregated working graph for the Louvain levels: weighted, with
// self-loops holding intra-community weight.
struct LevelGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> adj;  // no self pairs
  std::vector<double> self_weight;                       // full loop weight (counted twice in strength)
  std::vector<double> strength;                          // weighted degree incl. self loops
  double two_m = 0.0;
};

LevelGraph level_from_mono(const MonoGraph& g) {
  LevelGraph lg;
  lg.n = g.num_nodes();
  lg.adj.resize(lg.n);
  lg.self_weight.assign(lg.n, 0.0);
  lg.strength.assign(lg.n, 0.0);
  for (const auto& e : g.edges) {
    lg.adj[e.u].push_back({e.v, 1.0});
    lg.adj[e.v].push_back({e.u, 1.0});
    lg.strength[e.u] += 1.0;
    lg.strength[e.v] += 1.0;
  }
  lg.two_m = 2.0 * static_cast<double>(g.num_edges());
  return lg;
}

// One pass of local moving; returns true if any node changed community.
bool local_move(const LevelGraph& lg, std::vector<int>& comm, std::mt19937_64& rng) {
  std::vector<double> comm_strength(lg.n, 0.0);
  for (int i = 0; i < lg.n; ++i) comm_strength[comm[i]] += lg.strength[i];

  std::vector<int> order(lg.n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> w_to(lg.n, 0.0);
  std::vector<int> touched;
  bool any = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int u : order) {
      const int cu = comm[u];
      touched.clear();
      for (const auto& [v, w] : lg.adj[u]) {
        if (w_to[comm[v]] == 0.0) touched.push_back(comm[v]);
        w_to[comm[v]] += w;
      }
      comm_strength[cu] -= lg.strength[u];
      double best_gain = 0.0;
      int best_c = cu;
      const double base = w_to[cu] - lg.strength[u] * comm_strength[cu] / lg.two_m;
      for (int c : touched) {
        const double gain = (w_to[c] - lg.strength[u] * comm_strength[c] / lg.two_m) - base;
        if (gain > best_gain + 1e-12 || (gain > best_gain - 1e-12 && c < best_c && gain > 1e-12)) {
          best_gain = gain;
          best_c = c;
        }
      }
      comm_strength[best_c] += lg.strength[u];
      if (best_c != cu) {
        comm[u] = best_c;
        improved = true;
        any = true;
      }
      for (int c : touched) w_to[c] = 0.0;
    }
  }
  return any;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& comm, std::vector<int>& renumber) {
  renumber.assign(lg.n, -1);
  int next = 0;
  for (int i = 0; i < lg.n; ++i)
    if (renumber[comm[i]] == -1) renumber[comm[i]] = next++;
  LevelGraph out;
  out.n = next;
  out.adj.resize(next);
  out.self_weight.assign(next, 0.0);
  out.strength.assign(next, 0.0);
  out.two_m = lg.two_m;
  std::vector<double> row(next, 0.0);
  for (int cu = 0; cu < next; ++cu) row[cu] = 0.0;
  // accumulate per super-node
  std::vector<std::vector<std::pair<int, double>>> buckets(next);
  for (int u = 0; u < lg.n; ++u) {
    const int cu = renumber[comm[u]];
    out.self_weight[cu] += lg.self_weight[u];
    for (const auto& [v, w] : lg.adj[u]) {
      const int cv = renumber[comm[v]];
      if (cv == cu)
        out.self_weight[cu] += w * 0.5;  // each intra edge seen from both ends
      else
        buckets[cu].push_back({cv, w});
    }
  }
  for (int c = 0; c < next; ++c) {
    auto& b = buckets[c];
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < b.size();) {
      std::size_t j = i;
      double w = 0.0;
      while (j < b.size() && b[j].first == b[i].first) w += b[j++].second;
      out.adj[c].push_back({b[i].first, w});
      i = j;
    }
  }
  for (int c = 0; c < next; ++c) {
    out.strength[c] = 2.0 * out.self_weight[c];
    for (const auto& [v, w] : out.adj[c]) out.strength[c] += w;
  }
  return out;
}

// `init` seeds the first local-moving phase; empty means singletons.
std::vector<int> louvain_once(const MonoGraph& g, std::mt19937_64& rng,
                              const std::vector<int>& init) {
  LevelGraph lg = level_from_mono(g);
  std::vector<int> node_to_comm(g.num_nodes());
  std::iota(node_to_comm.begin(), node_to_comm.end(), 0);

  std::vector<int> comm(lg.n);
  std::iota(comm.begin(), comm.end(), 0);
  if (!init.empty()) comm = init;
  while (true) {
    const bool moved = local_move(lg, comm, rng);
    std::vector<int> renumber;
    LevelGraph next = aggregate(lg, comm, renumber);
    for (auto& c : node_to_comm) c = renumber[comm[c]];
    if (!moved || next.n == lg.n) break;
    lg = std::move(next);
    comm.assign(lg.n, 0);
    std::iota(comm.begin(), comm.end(), 0);
  }
  return node_to_comm;
}

std::vector<int> compact_labels(std::vector<int> labels) {
  std::vector<int> remap(labels.size(), -1);
  int next = 0;
  for (auto& c : labels) {
    if (remap[c] == -1) remap[c] = next++;
    c = remap[c];
  }
  return labels;
}

}  // namespace

Partition louvain(const MonoGraph& g, std::uint64_t seed, int restarts) {
  if (g.num_edges() < 1) throw std::invalid_argument("louvain requires at least one edge");
  if (restarts < 1) restarts = 1;
  const int n = g.num_nodes();
  Partition best;
  best.modularity = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(derive_seed(seed, 0x10c0, r));
    // first run is the canonical singleton start; later runs restart from a
    // seeded random partition to escape order-stable local optima
    std::vector<int> init;
    if (r > 0) {
      const int groups = 1 + static_cast<int>(rng() % n);
      init.resize(n);
      for (auto& c : init) c = static_cast<int>(rng() % groups);
    }
    std::vector<int> labels = compact_labels(louvain_once(g, rng, init));
    const double q = modularity(g, labels);
    if (q > best.modularity + 1e-12) {
      best.labels = std::move(labels);
      best.modularity = q;
    }
  }
  best.num_communities = *std::max_element(best.labels.begin(), best.labels.end()) + 1;
  return best;
}

std::vector<int> kcore_decomposition(const MonoGraph& g) {
  const int n = g.num_nodes();
  std::vector<int> deg = g.degree();
  std::vector<int> coreness(n, 0);
  const int maxd = n ? *std::max_element(deg.begin(), deg.end()) : 0;
  std::vector<std::vector<int>> buckets(maxd + 1);
  for (int i = 0; i < n; ++i) buckets[deg[i]].push_back(i);
  std::vector<bool> removed(n, false);
  int k = 0;
  for (int round = 0; round < n; ++round) {
    int u = -1;
    for (int d = 0; d <= maxd; ++d) {
      while (!buckets[d].empty()) {
        const int cand = buckets[d].back();
        if (removed[cand] || deg[cand] != d) {
          buckets[d].pop_back();
          continue;
        }
        u = cand;
        break;
      }
      if (u != -1) break;
    }
    if (u == -1) break;
    k = std::max(k, deg[u]);
    coreness[u] = k;
    removed[u] = true;
    buckets[deg[u]].pop_back();
    for (int v : g.adj[u]) {
      if (removed[v]) continue;
      --deg[v];
      buckets[deg[v]].push_back(v);
    }
  }
  return coreness;
}

std::vector<int> innermost_shell(const MonoGraph& g) {
  const auto c = kcore_decomposition(g);
  std::vector<int> out;
  if (c.empty()) return out;
  const int kmax = *std::max_element(c.begin(), c.end());
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    if (c[i] == kmax) out.push_back(i);
  return out;
}

namespace {

// ln C(n, k) backed by a shared log-factorial table.
struct LogBinom {
  std::vector<double> lf;
  explicit LogBinom(std::int64_t max_n) {
    lf.resize(max_n + 2, 0.0);
    for (std::int64_t i = 1; i < static_cast<std::int64_t>(lf.size()); ++i)
      lf[i] = lf[i - 1] + std::log(static_cast<double>(i));
  }
  double operator()(std::int64_t n, std::int64_t k) const {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return lf[n] - lf[k] - lf[n - k];
  }
};

double surprise_from_counts(const LogBinom& lb, std::int64_t V, std::int64_t Vc, std::int64_t Vp,
                            std::int64_t L, std::int64_t lc, std::int64_t lp) {
  const std::int64_t R = V - Vc - Vp;  // cross pairs
  const double denom = lb(V, L);
  double lmax = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  double prev_row = -std::numeric_limits<double>::infinity();
  bool rows_descending = false;
  for (std::int64_t i = lc; i <= std::min(Vc, L - lp); ++i) {
    const double lci = lb(Vc, i);
    double row_max = -std::numeric_limits<double>::infinity();
    double row_acc = 0.0;
    double prev_t = -std::numeric_limits<double>::infinity();
    bool descending = false;
    const std::int64_t jlo = std::max(lp, L - i - R);
    for (std::int64_t j = jlo; j <= std::min(Vp, L - i); ++j) {
      const double t = lci + lb(Vp, j) + lb(R, L - i - j);
      if (!std::isfinite(t)) continue;
      if (t > row_max) {
        row_acc = row_acc * std::exp(row_max - t) + 1.0;
        row_max = t;
      } else {
        row_acc += std::exp(t - row_max);
      }
      // terms are log-concave in j: once decreasing and negligible, stop
      if (t < prev_t) descending = true;
      if (descending && t - row_max < -46.0) break;
      prev_t = t;
    }
    if (!std::isfinite(row_max)) continue;
    const double row = row_max + std::log(row_acc);
    if (row > lmax) {
      acc = acc * std::exp(lmax - row) + 1.0;
      lmax = row;
    } else {
      acc += std::exp(row - lmax);
    }
    if (row < prev_row) rows_descending = true;
    if (rows_descending && row - lmax < -46.0) break;
    prev_row = row;
  }
  if (!std::isfinite(lmax)) return 0.0;  // empty tail: whole support
  return std::min(0.0, lmax + std::log(acc) - denom);
}

struct SplitCounts {
  std::int64_t n_core = 0, l_core = 0, l_per = 0;
  std::vector<int> core_deg;  // per node: neighbors currently in the core
};

SplitCounts count_split(const MonoGraph& g, const std::vector<bool>& core) {
  SplitCounts s;
  s.core_deg.assign(g.num_nodes(), 0);
  for (int i = 0; i < g.num_nodes(); ++i) s.n_core += core[i];
  for (const auto& e : g.edges) {
    if (core[e.u]) ++s.core_deg[e.v];
    if (core[e.v]) ++s.core_deg[e.u];
    if (core[e.u] && core[e.v])
      ++s.l_core;
    else if (!core[e.u] && !core[e.v])
      ++s.l_per;
  }
  return s;
}

inline std::int64_t pairs2(std::int64_t n) { return n * (n - 1) / 2; }

}  // namespace

double bimodular_surprise_counts(std::int64_t V, std::int64_t V_core, std::int64_t V_per,
                                 std::int64_t L, std::int64_t l_core, std::int64_t l_per) {
  LogBinom lb(std::max<std::int64_t>(V, 1));
  return surprise_from_counts(lb, V, V_core, V_per, L, l_core, l_per);
}

double bimodular_surprise(const MonoGraph& g, const std::vector<bool>& core) {
  if (static_cast<int>(core.size()) != g.num_nodes())
    throw std::invalid_argument("core labels size mismatch");
  const auto s = count_split(g, core);
  const std::int64_t n = g.num_nodes();
  return bimodular_surprise_counts(pairs2(n), pairs2(s.n_core), pairs2(n - s.n_core),
                                   g.num_edges(), s.l_core, s.l_per);
}

CorePeripheryAssignment detect_core_periphery(const MonoGraph& g, std::uint64_t seed, int restarts) {
  const int n = g.num_nodes();
  const std::int64_t V = pairs2(n);
  const std::int64_t L = g.num_edges();
  LogBinom lb(std::max<std::int64_t>(V, 1));

  auto score = [&](std::int64_t n_core, std::int64_t lc, std::int64_t lp) {
    return surprise_from_counts(lb, V, pairs2(n_core), pairs2(n - n_core), L, lc, lp);
  };

  // Degree-median starting split.
  const auto deg = g.degree();
  std::vector<int> sorted_deg = deg;
  std::sort(sorted_deg.begin(), sorted_deg.end());
  const int median = n ? sorted_deg[n / 2] : 0;
  std::vector<bool> median_split(n);
  for (int i = 0; i < n; ++i) median_split[i] = deg[i] >= median && deg[i] > 0;

  std::vector<bool> best_core = median_split;
  double best_score = bimodular_surprise(g, median_split);
  if (restarts < 1) restarts = 1;

  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(derive_seed(seed, 0xc07e, r));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<bool> core = median_split;
    if (r > 0)  // later runs explore around the median split
      for (int i = 0; i < n; ++i)
        if (unif(rng) < 0.25) core[i] = !core[i];

    auto s = count_split(g, core);
    double cur = score(s.n_core, s.l_core, s.l_per);
    double run_best = cur;
    std::vector<bool> run_best_core = core;

    int sideways_budget = 2 * n + 8;
    const int max_steps = 100 * n + 100;
    for (int step = 0; step < max_steps; ++step) {
      double cand_best = std::numeric_limits<double>::infinity();
      int cand_node = -1;
      for (int u = 0; u < n; ++u) {
        std::int64_t nc = s.n_core, lc = s.l_core, lp = s.l_per;
        const int cd = s.core_deg[u];
        const int pd = static_cast<int>(g.adj[u].size()) - cd;
        if (core[u]) {
          --nc;
          lc -= cd;
          lp += pd;
        } else {
          ++nc;
          lc += cd;
          lp -= pd;
        }
        const double sc = score(nc, lc, lp);
        if (sc < cand_best - 1e-15) {
          cand_best = sc;
          cand_node = u;
        }
      }
      if (cand_node < 0) break;
      const bool strict = cand_best < cur - 1e-10;
      const bool sideways = !strict && cand_best <= cur + 1e-10;
      if (!strict && !(sideways && sideways_budget > 0 && unif(rng) < 0.5)) break;
      if (!strict) --sideways_budget;

      const int u = cand_node;
      const int cd = s.core_deg[u];
      const int pd = static_cast<int>(g.adj[u].size()) - cd;
      if (core[u]) {
        --s.n_core;
        s.l_core -= cd;
        s.l_per += pd;
      } else {
        ++s.n_core;
        s.l_core += cd;
        s.l_per -= pd;
      }
      core[u] = !core[u];
      for (int v : g.adj[u]) s.core_deg[v] += core[u] ? 1 : -1;
      cur = cand_best;
      if (cur < run_best - 1e-12) {
        run_best = cur;
        run_best_core = core;
      }
    }
    if (run_best < best_score - 1e-12) {
      best_score = run_best;
      best_core = run_best_core;
    }
  }

  CorePeripheryAssignment out;
  out.core = best_core;
  const auto s = count_split(g, best_core);
  out.V = V;
  out.V_core = pairs2(s.n_core);
  out.V_per = pairs2(n - s.n_core);
  out.L = L;
  out.l_core = s.l_core;
  out.l_per = s.l_per;
  out.log_surprise = best_score;
  return out;
}

double core_jaccard(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (a.empty() && b.empty()) return 1.0;
  std::vector<int> inter;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  const double uni = static_cast<double>(a.size() + b.size() - inter.size());
  return static_cast<double>(inter.size()) / uni;
}

std::string partition_json(const MonoGraph& g, const Partition& p) {
  nlohmann::json labels = nlohmann::json::object();
  for (int i = 0; i < g.num_nodes(); ++i) labels[g.labels[i]] = p.labels[i];
  nlohmann::json j;
  j["num_communities"] = p.num_communities;
  j["modularity"] = p.modularity;
  j["labels"] = labels;
  return j.dump(2);
}

std::string core_periphery_json(const MonoGraph& g, const CorePeripheryAssignment& cp) {
  nlohmann::json roles = nlohmann::json::object();
  for (int i = 0; i < g.num_nodes(); ++i) roles[g.labels[i]] = cp.core[i] ? "core" : "periphery";
  nlohmann::json j;
  j["log_surprise"] = cp.log_surprise;
  j["roles"] = roles;
  j["counts"] = {{"V", cp.V},      {"V_core", cp.V_core}, {"V_per", cp.V_per},
                 {"L", cp.L},      {"l_core", cp.l_core}, {"l_per", cp.l_per}};
  return j.dump(2);
}

}  // namespace semnet
