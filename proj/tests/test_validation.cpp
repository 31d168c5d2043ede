#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "semnet/validation.hpp"

using namespace semnet;
using semnet::testing::heterogeneous_bipartite;
using semnet::testing::make_labels;
using semnet::testing::planted_two_block;

TEST_CASE("poisson binomial survival examples") {
  const double half[] = {0.5, 0.5};
  CHECK(poisson_binomial_sf(half, 1) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(poisson_binomial_sf(half, 0) == 1.0);
  const double one[] = {1.0};
  CHECK(poisson_binomial_sf(one, 1) == 1.0);
  const double bad[] = {1.5};
  CHECK_THROWS_AS(poisson_binomial_sf(bad, 0), std::invalid_argument);
  CHECK_THROWS_AS(poisson_binomial_sf(half, 3), std::invalid_argument);
}

TEST_CASE("poisson binomial against exact enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> len(1, 15);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = len(rng);
    std::vector<double> probs(n);
    for (auto& p : probs) p = unif(rng);
    std::uniform_int_distribution<int> pick(0, n);
    const int n_star = pick(rng);
    const double got = poisson_binomial_sf(probs, n_star);
    const double want = oracle::exact_pb_sf(probs, n_star);
    CHECK(std::abs(got - want) <= 1e-12);
  }
}

TEST_CASE("equal probabilities reduce to the binomial") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    const double p = unif(rng);
    const std::vector<double> probs(n, p);
    for (int n_star = 0; n_star <= n; ++n_star)
      CHECK(std::abs(poisson_binomial_sf(probs, n_star) - binomial_sf(n, p, n_star)) <= 1e-12);
  }
}

TEST_CASE("survival is non-increasing in the threshold") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> probs(25);
  for (auto& p : probs) p = unif(rng);
  double prev = 1.0;
  for (int n_star = 0; n_star <= 25; ++n_star) {
    const double sf = poisson_binomial_sf(probs, n_star);
    CHECK(sf <= prev + 1e-15);
    prev = sf;
  }
}

TEST_CASE("binomial survival examples") {
  CHECK(binomial_sf(2, 0.5, 2) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(binomial_sf(10, 0.0, 1) == 0.0);
  CHECK(binomial_sf(10, 0.3, 0) == 1.0);
  CHECK(binomial_sf(5, 1.0, 5) == 1.0);
  CHECK_THROWS_AS(binomial_sf(3, 0.5, 4), std::invalid_argument);
}

TEST_CASE("pair p-values") {
  SUBCASE("zero observed count means the whole tail") {
    const auto g = BipartiteGraph::from_edges(make_labels("u", 3), make_labels("h", 2),
                                              {{0, 0}, {1, 1}});
    auto [bicm, report] = fit_bicm(g);
    CHECK(pair_pvalue(g, bicm, 0, 1).pvalue == 1.0);
    CHECK(pair_pvalue(g, fit_bipcm(g), 0, 1).pvalue == 1.0);
    CHECK(pair_pvalue(g, fit_birgm(g), 0, 1).pvalue == 1.0);
  }
  SUBCASE("birgm closed form") {
    // N_top = 3, uniform p = 1/2, V* = 3 -> (1/4)^3
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 3; ++i) {
      edges.push_back({i, 0});
      edges.push_back({i, 1});
    }
    auto g = BipartiteGraph::from_edges(make_labels("u", 3), make_labels("h", 4), edges);
    const auto m = fit_birgm(g);
    REQUIRE(m.uniform_p == 0.5);
    const auto pv = pair_pvalue(g, m, 0, 1);
    CHECK(pv.observed == 3);
    CHECK(pv.pvalue == doctest::Approx(0.015625).epsilon(1e-12));
  }
  SUBCASE("bicm matches enumeration over all 4x3 graphs") {
    const auto g = BipartiteGraph::from_edges(
        make_labels("u", 4), make_labels("h", 3),
        {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}});
    auto [m, report] = fit_bicm(g, 1e-12);
    REQUIRE(report.converged);
    // tail over every biadjacency matrix, weighted by the fitted link
    // probabilities; independent of the Poisson-Binomial route
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const auto pv = pair_pvalue(g, m, a, b);
        long double tail = 0.0L;
        for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
          long double w = 1.0L;
          int v = 0;
          std::array<std::array<int, 3>, 4> cell{};
          for (int bit = 0; bit < 12; ++bit) {
            const int i = bit / 3, al = bit % 3;
            cell[i][al] = (mask >> bit) & 1;
            const double p = m.link_probability(i, al);
            w *= cell[i][al] ? p : 1.0 - p;
          }
          for (int i = 0; i < 4; ++i) v += cell[i][a] * cell[i][b];
          if (v >= pv.observed) tail += w;
        }
        CHECK(std::abs(pv.pvalue - static_cast<double>(tail)) <= 1e-10);
      }
  }
}

TEST_CASE("fdr selection") {
  auto mk = [](std::vector<double> ps) {
    std::vector<PairPValue> out;
    for (std::size_t i = 0; i < ps.size(); ++i)
      out.push_back({0, static_cast<int>(i + 1), 1, ps[i]});
    return out;
  };
  SUBCASE("worked example") {
    const auto res = fdr_select(mk({0.01, 0.02, 0.5}), 3, 0.05);
    CHECK(res.threshold_index == 2);
    CHECK(res.threshold_pvalue == 0.02);
    CHECK(res.kept.size() == 2);
  }
  SUBCASE("all ones keeps nothing") {
    const auto res = fdr_select(mk({1.0, 1.0, 1.0}), 3, 0.05);
    CHECK(res.threshold_index == 0);
    CHECK(res.kept.empty());
  }
  SUBCASE("single pair at the boundary") {
    const auto res = fdr_select(mk({0.04}), 1, 0.05);
    CHECK(res.kept.size() == 1);
  }
  SUBCASE("ties at the threshold are kept") {
    const auto res = fdr_select(mk({0.01, 0.01, 0.9}), 3, 0.05);
    CHECK(res.kept.size() == 2);
  }
  SUBCASE("matches the naive reimplementation on random vectors") {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 60);
      const std::int64_t m = n + static_cast<std::int64_t>(rng() % 100);
      std::vector<double> ps(n);
      for (auto& p : ps) p = std::pow(unif(rng), 1.0 + 3.0 * unif(rng));
      const auto res = fdr_select(mk(ps), m, 0.05);
      const auto naive = oracle::fdr_naive(ps, m, 0.05);
      std::set<int> got, want;
      for (const auto& pv : res.kept) got.insert(pv.beta);
      for (auto idx : naive) want.insert(static_cast<int>(idx + 1));
      CHECK(got == want);
    }
  }
}

TEST_CASE("validated projection") {
  SUBCASE("edgeless graph validates nothing") {
    const auto g = BipartiteGraph::from_edges(make_labels("u", 4), make_labels("h", 4), {});
    auto [m, report] = fit_bicm(g);
    const auto vp = validated_projection(g, m);
    CHECK(vp.graph.num_edges() == 0);
    CHECK(vp.graph.num_nodes() == 4);
  }
  SUBCASE("a heavily retweeted pair survives while noise does not") {
    // 30 of 1000 users share one hashtag pair; everything else is noise
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < 1000; ++i)
      for (int a = 0; a < 10; ++a)
        if (unif(rng) < 0.01) edges.insert({i, a});
    for (int i = 0; i < 30; ++i) {
      edges.insert({i, 0});
      edges.insert({i, 1});
    }
    const auto g = BipartiteGraph::from_edges(make_labels("u", 1000), make_labels("h", 10),
                                              {edges.begin(), edges.end()});
    auto [m, report] = fit_bicm(g);
    REQUIRE(report.converged);
    const auto vp = validated_projection(g, m, 0.05);
    REQUIRE(vp.graph.num_edges() >= 1);
    CHECK(vp.graph.has_edge(0, 1));
    CHECK(vp.graph.num_edges() <= 2);  // the planted pair, not the noise
  }
  SUBCASE("planted blocks validate within, never across") {
    const int tags_per_block = 20;
    const auto g = planted_two_block(100, tags_per_block, 0.3, 0.02, 31);
    auto [m, report] = fit_bicm(g);
    REQUIRE(report.converged);
    const auto vp = validated_projection(g, m, 0.05);
    REQUIRE(vp.graph.num_edges() > 10);
    for (const auto& e : vp.graph.edges)
      CHECK(semnet::testing::block_of(g, e.u, tags_per_block) ==
            semnet::testing::block_of(g, e.v, tags_per_block));
  }
  SUBCASE("validated edges nest inside the naive projection, bicm strictest") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto g = heterogeneous_bipartite(150, 60, seed);
      auto [bicm, report] = fit_bicm(g);
      REQUIRE(report.converged);
      const auto naive = naive_projection(g, Layer::bottom);
      const auto e_bicm = validated_projection(g, bicm, 0.05);
      const auto e_bipcm = validated_projection(g, fit_bipcm(g), 0.05);
      const auto e_birgm = validated_projection(g, fit_birgm(g), 0.05);
      for (const auto& e : e_bicm.graph.edges) CHECK(naive.has_edge(e.u, e.v));
      CHECK(e_bicm.graph.num_edges() <= naive.num_edges());
      CHECK(e_bicm.graph.num_edges() <= e_birgm.graph.num_edges());
      CHECK(e_bicm.graph.num_edges() <= e_bipcm.graph.num_edges());
    }
  }
}

TEST_CASE("parallel and serial pair p-values agree bitwise") {
  const auto g = heterogeneous_bipartite(80, 40, 12);
  auto [m, report] = fit_bicm(g);
  const auto serial = all_pair_pvalues_serial(g, m);
  const auto parallel = all_pair_pvalues(g, m);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].alpha == parallel[i].alpha);
    CHECK(serial[i].beta == parallel[i].beta);
    CHECK(serial[i].pvalue == parallel[i].pvalue);
  }
}
