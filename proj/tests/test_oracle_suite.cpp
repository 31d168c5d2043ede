#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "semnet/mesoscale.hpp"

using namespace semnet;
using semnet::testing::mono_from_pairs;

TEST_CASE("oracle budgets are enforced") {
  std::vector<double> probs(21, 0.5);
  CHECK_THROWS_AS(oracle::exact_pb_sf(probs, 0), oracle::BudgetExceeded);
  const auto big = semnet::testing::random_mono(11, 0.3, 1);
  CHECK_THROWS_AS(oracle::exhaustive_best_partition(big, oracle::Objective::modularity),
                  oracle::BudgetExceeded);
  const auto big17 = semnet::testing::random_mono(17, 0.3, 1);
  CHECK_THROWS_AS(
      oracle::exhaustive_best_partition(big17, oracle::Objective::neg_log_surprise_bimodular),
      oracle::BudgetExceeded);
  const auto big9 = semnet::testing::random_mono(9, 0.3, 1);
  CHECK_THROWS_AS(oracle::enumerate_geodesic_betweenness(big9), oracle::BudgetExceeded);
}

TEST_CASE("exact poisson binomial trivia") {
  const std::vector<double> zeros(5, 0.0);
  CHECK(oracle::exact_pb_sf(zeros, 0) == 1.0);
  CHECK(oracle::exact_pb_sf(zeros, 1) == 0.0);
}

TEST_CASE("exhaustive bimodular matches direct evaluation on a single edge") {
  const auto g = mono_from_pairs(2, {{0, 1}});
  const auto best =
      oracle::exhaustive_best_partition(g, oracle::Objective::neg_log_surprise_bimodular);
  // every split of a single edge covers the whole support: best score is 0
  CHECK(best.score == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("geodesic oracle on textbook graphs") {
  const auto p3 = oracle::enumerate_geodesic_betweenness(mono_from_pairs(3, {{0, 1}, {1, 2}}));
  CHECK(p3[1] == 2.0);
  std::vector<std::pair<int, int>> k4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.push_back({u, v});
  for (double b : oracle::enumerate_geodesic_betweenness(mono_from_pairs(4, k4))) CHECK(b == 0.0);
}

TEST_CASE("canonical labels identify partitions up to renaming") {
  CHECK(oracle::canonical_labels({2, 2, 5, 5}) == oracle::canonical_labels({0, 0, 1, 1}));
  CHECK(oracle::canonical_labels({1, 0, 1}) != oracle::canonical_labels({0, 0, 1}));
}
