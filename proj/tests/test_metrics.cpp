#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "semnet/metrics.hpp"

using namespace semnet;
using semnet::testing::make_labels;
using semnet::testing::mono_from_pairs;
using semnet::testing::random_mono;

TEST_CASE("annd") {
  SUBCASE("star") {
    const auto g = mono_from_pairs(4, {{0, 1}, {0, 2}, {0, 3}});
    const auto a = annd(g);
    CHECK(*a[0] == 1.0);
    for (int leaf : {1, 2, 3}) CHECK(*a[leaf] == 3.0);
  }
  SUBCASE("complete K4") {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) pairs.push_back({u, v});
    const auto a = annd(mono_from_pairs(4, pairs));
    for (int i = 0; i < 4; ++i) CHECK(*a[i] == 3.0);
  }
  SUBCASE("path") {
    const auto a = annd(mono_from_pairs(3, {{0, 1}, {1, 2}}));
    CHECK(*a[1] == 1.0);
    CHECK(*a[0] == 2.0);
    CHECK(*a[2] == 2.0);
  }
  SUBCASE("isolated nodes are null") {
    const auto a = annd(mono_from_pairs(2, {}));
    CHECK_FALSE(a[0].has_value());
  }
}

TEST_CASE("clustering coefficient") {
  SUBCASE("triangle") {
    const auto c = clustering_coefficient(mono_from_pairs(3, {{0, 1}, {1, 2}, {0, 2}}));
    for (int i = 0; i < 3; ++i) CHECK(*c[i] == 1.0);
  }
  SUBCASE("star center is zero") {
    const auto c = clustering_coefficient(mono_from_pairs(4, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(*c[0] == 0.0);
    CHECK_FALSE(c[1].has_value());  // degree 1
  }
  SUBCASE("K4 minus an edge") {
    const auto c =
        clustering_coefficient(mono_from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}));
    // nodes 0 and 1 have degree 3 and two closed neighbor pairs of three
    CHECK(*c[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(*c[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(*c[2] == 1.0);
    CHECK(*c[3] == 1.0);
  }
}

TEST_CASE("betweenness") {
  SUBCASE("path counts ordered pairs") {
    const auto b = betweenness(mono_from_pairs(3, {{0, 1}, {1, 2}}));
    CHECK(b[1] == 2.0);  // (0,2) and (2,0)
    CHECK(b[0] == 0.0);
    CHECK(b[2] == 0.0);
  }
  SUBCASE("complete graph has none") {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < 5; ++u)
      for (int v = u + 1; v < 5; ++v) pairs.push_back({u, v});
    for (double v : betweenness(mono_from_pairs(5, pairs))) CHECK(v == 0.0);
  }
  SUBCASE("star center carries every leaf pair") {
    const auto b = betweenness(mono_from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
    CHECK(b[0] == 12.0);  // 4*3 ordered leaf pairs
  }
  SUBCASE("matches the enumeration oracle, split paths included") {
    // square with a diagonal: multiple geodesics
    const auto g = mono_from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 4}, {3, 4}});
    const auto got = betweenness(g);
    const auto want = oracle::enumerate_geodesic_betweenness(g);
    for (int i = 0; i < g.num_nodes(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
  SUBCASE("disconnected components contribute nothing across") {
    const auto g = mono_from_pairs(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    const auto b = betweenness(g);
    CHECK(b[1] == 2.0);
    CHECK(b[4] == 2.0);
  }
  SUBCASE("parallel equals serial bitwise") {
    const auto g = random_mono(60, 0.1, 321);
    const auto s = betweenness_serial(g);
    const auto p = betweenness(g);
    for (int i = 0; i < g.num_nodes(); ++i) CHECK(s[i] == p[i]);
  }
}

TEST_CASE("metric ranges on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_mono(15, 0.3, 700 + seed);
    const auto c = clustering_coefficient(g);
    const auto a = annd(g);
    for (int i = 0; i < g.num_nodes(); ++i) {
      if (c[i]) {
        CHECK(*c[i] >= 0.0);
        CHECK(*c[i] <= 1.0);
      }
      if (a[i]) {
        CHECK(*a[i] >= 1.0);
        CHECK(*a[i] <= g.num_nodes() - 1.0);
      }
    }
  }
}

TEST_CASE("star graph annd decreases with degree") {
  const auto g = mono_from_pairs(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  const auto a = annd(g);
  // center: degree 5, annd 1; leaves: degree 1, annd 5
  CHECK(*a[0] < *a[1]);
}

TEST_CASE("summarize") {
  SUBCASE("triangle") {
    const auto r = summarize(mono_from_pairs(3, {{0, 1}, {1, 2}, {0, 2}}));
    CHECK(r.node_count == 3);
    CHECK(r.edge_count == 3);
    CHECK(r.mean_degree == 2.0);
  }
  SUBCASE("edgeless") {
    const auto r = summarize(mono_from_pairs(5, {}));
    CHECK(r.mean_degree == 0.0);
  }
  SUBCASE("fields match independent recomputation") {
    const auto g = random_mono(12, 0.3, 5);
    const auto r = summarize(g);
    CHECK(r.edge_count == g.num_edges());
    const auto a = oracle::annd_direct(g);
    const auto c = oracle::clustering_direct(g);
    for (int i = 0; i < g.num_nodes(); ++i) {
      if (a[i] >= 0)
        CHECK(*r.annd[i] == doctest::Approx(a[i]).epsilon(1e-12));
      else
        CHECK_FALSE(r.annd[i].has_value());
      if (c[i] >= 0)
        CHECK(*r.clustering[i] == doctest::Approx(c[i]).epsilon(1e-12));
      else
        CHECK_FALSE(r.clustering[i].has_value());
    }
  }
}

TEST_CASE("hashtag persistence") {
  auto day_graph = [](std::vector<std::string> tags) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < static_cast<int>(tags.size()); ++a) edges.push_back({0, a});
    return BipartiteGraph::from_edges({"u"}, std::move(tags), edges);
  };
  std::map<Date, BipartiteGraph> daily;
  daily.emplace(Date{2018, 2, 19}, day_graph({"always", "sometimes"}));
  daily.emplace(Date{2018, 2, 20}, day_graph({"always"}));
  const auto table = hashtag_persistence(daily, 2);
  REQUIRE(table.size() == 2);
  CHECK(table[0].first == "always");
  CHECK(table[0].second == 1.0);
  CHECK(table[1].first == "sometimes");
  CHECK(table[1].second == 0.5);
}

TEST_CASE("triadic persistence") {
  const auto triangle = mono_from_pairs(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto path = mono_from_pairs(3, {{0, 1}, {1, 2}});
  std::map<Date, MonoGraph> daily;
  daily.emplace(Date{2018, 2, 19}, triangle);
  daily.emplace(Date{2018, 2, 20}, triangle);
  daily.emplace(Date{2018, 2, 21}, path);  // open triple: no closure
  const auto table = triadic_persistence(daily, 3);
  REQUIRE(table.size() == 1);
  CHECK(table[0].second == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("triad present 16 of 51 days persists at 31 percent") {
  // the denominator is the whole day range, empty days included
  const auto triangle = mono_from_pairs(3, {{0, 1}, {1, 2}, {0, 2}});
  std::map<Date, MonoGraph> daily;
  for (int d = 0; d < 16; ++d)
    daily.emplace(civil_from_days(days_from_civil(Date{2018, 1, 28}) + 3 * d), triangle);
  const int total_days = 51;
  const auto table = triadic_persistence(daily, total_days);
  REQUIRE(table.size() == 1);
  CHECK(table[0].second == doctest::Approx(16.0 / 51.0).epsilon(1e-14));
  CHECK(std::round(table[0].second * 100.0) == 31.0);
}

TEST_CASE("polarization") {
  // verified v0..v3, non-verified a,b,c
  auto rt = BipartiteGraph::from_edges(
      {"v0", "v1", "v2", "v3"}, {"a", "b", "c"},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0},    // a: 3 of 4 in community of v0,v1,v2
       {0, 1}, {1, 1}, {2, 2}, {3, 2}});  // b: 2/2 in c1; c: tie
  std::map<std::string, int> comm{{"v0", 1}, {"v1", 1}, {"v2", 1}, {"v3", 2}};
  SUBCASE("all neighbors in one community") {
    const auto out = polarization(rt, comm, 0.5);
    REQUIRE(out.assigned.count("b"));
    CHECK(out.assigned.at("b").community == 1);
    CHECK(out.assigned.at("b").rho == 1.0);
  }
  SUBCASE("three of four neighbors above threshold") {
    const auto out = polarization(rt, comm, 0.6);
    REQUIRE(out.assigned.count("a"));
    CHECK(out.assigned.at("a").community == 1);
    CHECK(out.assigned.at("a").rho == 0.75);
  }
  SUBCASE("ties stay unassigned") {
    std::map<std::string, int> split{{"v2", 1}, {"v3", 2}};
    const auto out = polarization(rt, split, 0.3);
    CHECK_FALSE(out.assigned.count("c"));
  }
  SUBCASE("community relabeling only renames") {
    std::map<std::string, int> relabeled{{"v0", 9}, {"v1", 9}, {"v2", 9}, {"v3", 4}};
    const auto a = polarization(rt, comm, 0.5);
    const auto b = polarization(rt, relabeled, 0.5);
    REQUIRE(a.assigned.size() == b.assigned.size());
    for (const auto& [user, e] : a.assigned) CHECK(b.assigned.at(user).rho == e.rho);
  }
}
