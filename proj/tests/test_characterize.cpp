#include <doctest.h>

#include "brute.hpp"
#include "degentest/cactus.hpp"
#include "degentest/obstacles.hpp"

using namespace degentest;

TEST_SUITE_BEGIN("characterize");

TEST_CASE("obstacles on knowns") {
  SUBCASE("C4 has exactly {0,2} and {1,3}") {
    auto obs = obstacles(cycle_graph(4));
    REQUIRE(obs.size() == 2);
    CHECK(obs[0].s_set == std::vector<int>{0, 2});
    CHECK(obs[1].s_set == std::vector<int>{1, 3});
  }
  SUBCASE("K4 has none") { CHECK(obstacles(complete_graph(4)).empty()); }
  SUBCASE("C5 has the five non-adjacent pairs") {
    auto obs = obstacles(cycle_graph(5));
    REQUIRE(obs.size() == 5);
    for (const auto& o : obs) {
      CHECK(o.s_set.size() == 2);
      CHECK(!cycle_graph(5).has_edge(o.s_set[0], o.s_set[1]));
    }
  }
  SUBCASE("K2 has none") { CHECK(obstacles(path_graph(2)).empty()); }
  SUBCASE("non-2-connected input rejected") {
    CHECK_THROWS_AS(obstacles(path_graph(3)), NotTwoConnected);
  }
  SUBCASE("every returned obstacle revalidates") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Graph g = brute::random_graph(7, 9, 7, seed);
      if (!is_biconnected(g) || g.vertex_count() < 3) continue;
      for (const auto& o : obstacles(g)) CHECK(obstacle_valid(o));
    }
  }
}

TEST_CASE("is_testable on knowns") {
  SUBCASE("C4 is non-testable with witness {0,2}") {
    auto verdict = is_testable(cycle_graph(4));
    CHECK(!verdict.testable);
    REQUIRE(verdict.witnesses.size() == 1);
    CHECK(verdict.witnesses[0].s_set_in_pattern == std::vector<int>{0, 2});
  }
  SUBCASE("K3 is testable") { CHECK(is_testable(complete_graph(3)).testable); }
  SUBCASE("trees are testable") {
    CHECK(is_testable(path_graph(6)).testable);
    CHECK(is_testable(star_graph(10)).testable);
  }
  SUBCASE("disconnected patterns rejected") {
    Graph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(is_testable(g), DisconnectedPattern);
  }
}

TEST_CASE("is_testable agrees with the direct restatement on <= 6 vertices") {
  // scaled-down version of the acceptance sweep: a random sample per size
  for (int n = 2; n <= 6; ++n) {
    int seen = 0;
    for (std::uint64_t seed = 0; seed < 40 && seen < 15; ++seed) {
      Graph g = brute::random_graph(n, n + static_cast<int>(seed % 5), n, mix_seed(n, seed));
      if (!is_connected(g)) continue;
      ++seen;
      CHECK(is_testable(g).testable == brute::testable(g));
    }
  }
}

TEST_CASE("cactus representations") {
  Graph c4 = cycle_graph(4);
  Obstacle obs{c4, {0, 2}};

  SUBCASE("a path embeds as a single petal") {
    auto reps = cactus_reps(path_graph(3), c4, obs, 8);
    REQUIRE(!reps.empty());
    bool has_empty_l = false;
    for (const auto& rep : reps) {
      CHECK(cactus_rep_valid(rep));
      if (rep.articulation_set.empty()) has_empty_l = true;
    }
    CHECK(has_empty_l);
  }
  SUBCASE("C4 is not a cactus over itself") {
    CHECK(cactus_reps(c4, c4, obs, 8).empty());
  }
  SUBCASE("the star is a cactus with the center as articulation set") {
    auto reps = cactus_reps(star_graph(10), c4, obs, 4);
    REQUIRE(!reps.empty());
    for (const auto& rep : reps) CHECK(cactus_rep_valid(rep));
    const auto& rep = reps.front();
    CHECK(rep.articulation_set == std::vector<int>{0});
    int center_role = rep.role_map[0];
    CHECK((center_role == 0 || center_role == 2));
  }
}

TEST_CASE("sentinels") {
  Graph c4 = cycle_graph(4);
  Obstacle obs{c4, {0, 2}};
  SUBCASE("ST10 is a sentinel for (C4, {0,2}, {})") {
    auto [ok, rep] = is_sentinel(star_graph(10), c4, obs, {});
    CHECK(ok);
    REQUIRE(rep);
    CHECK(cactus_rep_valid(*rep));
  }
  SUBCASE("C4 is not a sentinel for itself") {
    auto [ok, rep] = is_sentinel(c4, c4, obs, {});
    CHECK(!ok);
    CHECK(!rep);
  }
  SUBCASE("bad s_prime rejected") {
    std::vector<int> bad{0};
    CHECK_THROWS_AS(is_sentinel(star_graph(10), c4, obs, bad), BadSPrime);
    std::vector<int> not_in_s{1, 3};
    Graph k23 = Graph::from_edges(5, std::vector<std::pair<int, int>>{
                                         {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
    Obstacle obs3{k23, {0, 1, 2}};
    CHECK_THROWS_AS(is_sentinel(star_graph(4), k23, obs3, not_in_s), BadSPrime);
  }
}

TEST_CASE("sentinel uniqueness constraint with a 3-role obstacle") {
  // K_{2,3}: obstacle {0,1,2}, components {3} and {4}
  Graph k23 = Graph::from_edges(5, std::vector<std::pair<int, int>>{
                                       {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
  Obstacle obs{k23, {0, 1, 2}};
  REQUIRE(obstacle_valid(obs));

  auto role_uses = [](const CactusRep& rep, int role) {
    int count = 0;
    for (int r : rep.role_map) {
      if (r == role) ++count;
    }
    return count;
  };

  SUBCASE("no representation at all means no sentinel") {
    auto [ok, rep] = is_sentinel(k23, k23, obs, std::vector<int>{0});
    CHECK(!ok);
    CHECK(!rep);
  }
  SUBCASE("a path fits while honoring the cap on the reserved role") {
    for (int reserved : {0, 1, 2}) {
      auto [ok, rep] = is_sentinel(path_graph(3), k23, obs, std::vector<int>{reserved});
      CHECK(ok);
      REQUIRE(rep);
      CHECK(cactus_rep_valid(*rep));
      CHECK(role_uses(*rep, reserved) <= 1);
    }
  }
  SUBCASE("two glued stars need the two-cut articulation representation") {
    // centers 0,4; shared leaf 3; star(0;1,2,3) + star(4;3,5,6)
    Graph glued = Graph::from_edges(
        7, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}, {4, 6}});
    for (int reserved : {0, 1, 2}) {
      auto [ok, rep] = is_sentinel(glued, k23, obs, std::vector<int>{reserved});
      CHECK(ok);
      REQUIRE(rep);
      CHECK(cactus_rep_valid(*rep));
      CHECK(role_uses(*rep, reserved) <= 1);
    }
  }
}

TEST_CASE("family testability") {
  Graph c4 = cycle_graph(4);
  SUBCASE("{C4, ST10} is testable via the star sentinel") {
    std::vector<Graph> family{c4, star_graph(10)};
    auto verdict = family_testable(family);
    CHECK(verdict.testable);
    REQUIRE(!verdict.sentinel_table.empty());
    for (const auto& entry : verdict.sentinel_table) {
      CHECK(entry.sentinel_index == 1);
      CHECK(cactus_rep_valid(entry.rep));
    }
    // both obstacles of C4 must be covered
    CHECK(verdict.sentinel_table.size() == 2);
  }
  SUBCASE("{C4} alone is non-testable") {
    std::vector<Graph> family{c4};
    auto verdict = family_testable(family);
    CHECK(!verdict.testable);
    REQUIRE(verdict.witnesses.size() == 1);
    CHECK(verdict.witnesses[0].s_set_in_pattern == std::vector<int>{0, 2});
    CHECK(verdict.witnesses[0].s_prime_in_pattern.empty());
  }
  SUBCASE("{K3} is testable") {
    std::vector<Graph> family{complete_graph(3)};
    CHECK(family_testable(family).testable);
  }
}

TEST_CASE("families over a 3-role obstacle") {
  // K_{2,3} has two obstacles: the 2-side {3,4} and the 3-side {0,1,2}
  Graph k23 = Graph::from_edges(5, std::vector<std::pair<int, int>>{
                                       {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
  auto obs_list = obstacles(k23);
  REQUIRE(obs_list.size() == 2);
  CHECK(obs_list[0].s_set == std::vector<int>{3, 4});
  CHECK(obs_list[1].s_set == std::vector<int>{0, 1, 2});

  SUBCASE("a path rescues both obstacles") {
    std::vector<Graph> family{k23, path_graph(3)};
    auto verdict = family_testable(family);
    CHECK(verdict.testable);
    // one entry for ({3,4}, {}) plus one per singleton subset of {0,1,2}
    CHECK(verdict.sentinel_table.size() == 4);
    for (const auto& entry : verdict.sentinel_table) {
      CHECK(entry.sentinel_index == 1);
      CHECK(cactus_rep_valid(entry.rep));
    }
  }
  SUBCASE("a triangle rescues nothing") {
    std::vector<Graph> family{k23, complete_graph(3)};
    auto verdict = family_testable(family);
    CHECK(!verdict.testable);
    REQUIRE(verdict.witnesses.size() == 1);
    CHECK(verdict.witnesses[0].pattern_index == 0);
    CHECK(verdict.witnesses[0].s_set_in_pattern == std::vector<int>{3, 4});
  }
}

TEST_CASE("forced role doubling blocks exactly one reserved role") {
  // base: roles {0,1,2} separate component {3} (adjacent to all roles) from
  // component {4,5} (4~{0,1}, 5~{1,2}); its unique triangle is {1,4,5}
  Graph base = Graph::from_edges(6, std::vector<std::pair<int, int>>{{0, 3},
                                                                     {1, 3},
                                                                     {2, 3},
                                                                     {0, 4},
                                                                     {1, 4},
                                                                     {4, 5},
                                                                     {1, 5},
                                                                     {2, 5}});
  auto obs_list = obstacles(base);
  REQUIRE(obs_list.size() == 3);
  CHECK(obs_list[0].s_set == std::vector<int>{3, 4});
  CHECK(obs_list[1].s_set == std::vector<int>{3, 5});
  CHECK(obs_list[2].s_set == std::vector<int>{0, 1, 2});
  const Obstacle& obs012 = obs_list[2];

  // two copies of the {4,5}-side closure glued at their role-0 corners; the
  // triangle inside each copy must map onto {1,4,5}, so role 1 is taken once
  // per copy by distinct vertices in every homomorphism
  Graph glued = Graph::from_edges(9, std::vector<std::pair<int, int>>{{0, 1},
                                                                      {1, 2},
                                                                      {1, 3},
                                                                      {2, 3},
                                                                      {3, 4},
                                                                      {0, 5},
                                                                      {5, 6},
                                                                      {5, 7},
                                                                      {6, 7},
                                                                      {7, 8}});
  CHECK(!cactus_reps(glued, base, obs012, 1).empty());
  auto [ok0, rep0] = is_sentinel(glued, base, obs012, std::vector<int>{0});
  CHECK(ok0);
  CHECK(cactus_rep_valid(*rep0));
  auto [ok2, rep2] = is_sentinel(glued, base, obs012, std::vector<int>{2});
  CHECK(ok2);
  auto [ok1, rep1] = is_sentinel(glued, base, obs012, std::vector<int>{1});
  CHECK(!ok1);
  CHECK(!rep1);

  SUBCASE("the family fails exactly at the doubled role") {
    // the size-2 obstacles are covered (their closures keep the triangle via
    // an S-role), so the first failing triple is ({0,1,2}, {1})
    std::vector<Graph> family{base, glued};
    auto verdict = family_testable(family);
    CHECK(!verdict.testable);
    REQUIRE(!verdict.witnesses.empty());
    CHECK(verdict.witnesses[0].s_set_in_pattern == std::vector<int>{0, 1, 2});
    CHECK(verdict.witnesses[0].s_prime_in_pattern == std::vector<int>{1});
  }
  SUBCASE("a path rescues every obstacle of the base") {
    std::vector<Graph> family{base, glued, path_graph(3)};
    CHECK(family_testable(family).testable);
  }
}

TEST_CASE("pattern preconditions") {
  Graph big = path_graph(13);
  std::vector<Graph> family{big};
  CHECK_THROWS_AS(family_testable(family), PatternTooLarge);
  Graph disconnected(4);
  disconnected.add_edge(0, 1);
  Graph c4 = cycle_graph(4);
  Obstacle obs{c4, {0, 2}};
  CHECK_THROWS_AS(cactus_reps(disconnected, c4, obs, 1), DisconnectedPattern);
}

TEST_CASE("family of one agrees with is_testable on small connected graphs") {
  for (int n = 2; n <= 6; ++n) {
    int seen = 0;
    for (std::uint64_t seed = 0; seed < 30 && seen < 10; ++seed) {
      Graph g = brute::random_graph(n, n + 1, n, mix_seed(100 + n, seed));
      if (!is_connected(g)) continue;
      ++seen;
      std::vector<Graph> family{g};
      CHECK(family_testable(family).testable == is_testable(g).testable);
    }
  }
}

TEST_CASE("testable families stay testable under testable additions") {
  std::vector<Graph> extras{complete_graph(3), path_graph(4), star_graph(3), complete_graph(4)};
  std::vector<std::vector<Graph>> corpus{
      {cycle_graph(4), star_graph(10)},
      {complete_graph(3)},
      {path_graph(5), complete_graph(3)},
  };
  for (auto& family : corpus) {
    REQUIRE(family_testable(family).testable);
    for (const auto& extra : extras) {
      REQUIRE(is_testable(extra).testable);
      auto bigger = family;
      bigger.push_back(extra);
      CHECK(family_testable(bigger).testable);
    }
  }
}

TEST_SUITE_END();
