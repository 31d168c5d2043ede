// Compares the serial reference kernels against the OpenMP versions on
// synthetic graphs: pair p-values under the BiCM and betweenness.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "semnet/bigraph.hpp"
#include "semnet/metrics.hpp"
#include "semnet/nullmodels.hpp"
#include "semnet/validation.hpp"

using namespace semnet;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

BipartiteGraph random_bipartite(int nt, int nb, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::string> tl(nt), bl(nb);
  for (int i = 0; i < nt; ++i) tl[i] = "u" + std::to_string(i);
  for (int a = 0; a < nb; ++a) bl[a] = "h" + std::to_string(a);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nt; ++i)
    for (int a = 0; a < nb; ++a)
      if (unif(rng) < density) edges.emplace_back(i, a);
  return BipartiteGraph::from_edges(std::move(tl), std::move(bl), edges);
}

MonoGraph random_mono(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "n" + std::to_string(i);
  std::vector<MonoGraph::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unif(rng) < density) edges.push_back({u, v, 1.0});
  return MonoGraph::from_edges(std::move(labels), std::move(edges));
}

}  // namespace

int main(int argc, char** argv) {
  int nt = 400, nb = 200, n_mono = 1500;
  if (argc > 1) nt = std::stoi(argv[1]);
  if (argc > 2) nb = std::stoi(argv[2]);
  if (argc > 3) n_mono = std::stoi(argv[3]);

#ifdef _OPENMP
  std::printf("openmp: max %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif

  const BipartiteGraph g = random_bipartite(nt, nb, 0.08, 7);
  auto [model, report] = fit_bicm(g);
  std::printf("bicm fit: %d iterations, residual %.2e\n", report.iterations, report.max_residual);

  auto t0 = clock_type::now();
  const auto serial_pv = all_pair_pvalues_serial(g, model);
  const double t_serial_pv = ms_since(t0);
  t0 = clock_type::now();
  const auto parallel_pv = all_pair_pvalues(g, model);
  const double t_parallel_pv = ms_since(t0);
  bool match = serial_pv.size() == parallel_pv.size();
  for (std::size_t i = 0; match && i < serial_pv.size(); ++i)
    match = serial_pv[i].pvalue == parallel_pv[i].pvalue;
  std::printf("pair p-values (%zu pairs): serial %.1f ms, parallel %.1f ms, speedup %.2fx, %s\n",
              serial_pv.size(), t_serial_pv, t_parallel_pv, t_serial_pv / t_parallel_pv,
              match ? "bitwise equal" : "MISMATCH");

  const MonoGraph m = random_mono(n_mono, 8.0 / n_mono, 11);
  t0 = clock_type::now();
  const auto bc_serial = betweenness_serial(m);
  const double t_serial_bc = ms_since(t0);
  t0 = clock_type::now();
  const auto bc_parallel = betweenness(m);
  const double t_parallel_bc = ms_since(t0);
  match = true;
  for (int i = 0; i < m.num_nodes() && match; ++i) match = bc_serial[i] == bc_parallel[i];
  std::printf("betweenness (%d nodes, %lld edges): serial %.1f ms, parallel %.1f ms, "
              "speedup %.2fx, %s\n",
              m.num_nodes(), static_cast<long long>(m.num_edges()), t_serial_bc, t_parallel_bc,
              t_serial_bc / t_parallel_bc, match ? "bitwise equal" : "MISMATCH");
  return match ? 0 : 1;
}
