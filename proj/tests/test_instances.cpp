#include <doctest.h>

#include "brute.hpp"
#include "degentest/degeneracy.hpp"
#include "degentest/instances.hpp"
#include "degentest/partition.hpp"

using namespace degentest;

TEST_SUITE_BEGIN("instances");

TEST_CASE("lb_construction on C4") {
  Graph c4 = cycle_graph(4);
  Obstacle obs{c4, {0, 2}};

  SUBCASE("n=10000 sizing matches the closed form") {
    LBParams params{c4, obs, -1, -1, 10000, 1};
    auto bundle = lb_construction(params);
    // m=70: 2*70 + 0 + 70^2 * 2 = 9940 <= 10000 < sizing for m=71
    REQUIRE(bundle.planted);
    CHECK(bundle.planted->members.size() == 4900);
    CHECK(bundle.graph.vertex_count() == 10000);
    CHECK(degeneracy(bundle.graph).p == 2);
    CHECK(bundle_valid(bundle));

    // hub degrees: every A u C vertex sees m edges per obstacle-neighbor
    for (int hub = 0; hub < 140; ++hub) CHECK(bundle.graph.degree(hub) == 140);
    // at threshold 100, exactly the 2m hubs are heavy
    auto part = heavy_light_partition(bundle.graph, 100);
    CHECK(part.heavy.size() == 140);
    CHECK(part.heavy.back() == 139);
    // pool vertices keep their role degree
    for (int v = 140; v < 9940; ++v) CHECK(bundle.graph.degree(v) == 2);
    // padding is isolated
    for (int v = 9940; v < 10000; ++v) CHECK(bundle.graph.degree(v) == 0);
  }

  SUBCASE("deleting the plant leaves a C4-free host") {
    LBParams params{c4, obs, -1, -1, 1200, 2};
    auto bundle = lb_construction(params);
    REQUIRE(bundle.planted);
    CHECK(packing_edge_disjoint(*bundle.planted, bundle.graph));
    Graph residual = bundle.graph;
    for (const auto& member : bundle.planted->members) {
      for (auto [u, v] : appearance_host_edges(c4, member)) residual.remove_edge(u, v);
    }
    CHECK(find_appearances(c4, residual, 1).empty());
  }

  SUBCASE("deterministic per seed, different across seeds") {
    LBParams a{c4, obs, -1, -1, 900, 5};
    LBParams b{c4, obs, -1, -1, 900, 5};
    LBParams c{c4, obs, -1, -1, 900, 6};
    CHECK(graph_to_string(lb_construction(a).graph) == graph_to_string(lb_construction(b).graph));
    CHECK(graph_to_string(lb_construction(a).graph) != graph_to_string(lb_construction(c).graph));
  }

  SUBCASE("errors") {
    LBParams tiny{c4, obs, -1, -1, 8, 1};
    CHECK_THROWS_AS(lb_construction(tiny), NTooSmall);
    LBParams bad_base{path_graph(4), Obstacle{path_graph(4), {1}}, -1, -1, 100, 1};
    CHECK_THROWS_AS(lb_construction(bad_base), NotTwoConnected);
  }
}

TEST_CASE("lb_construction beyond C4 stays k-degenerate") {
  // C6 with obstacle {0,3}: two path components of size 2
  Graph c6 = cycle_graph(6);
  Obstacle obs{c6, {0, 3}};
  REQUIRE(obstacle_valid(obs));
  LBParams params{c6, obs, -1, -1, 4000, 9};
  auto bundle = lb_construction(params);
  CHECK(bundle_valid(bundle));
  CHECK(degeneracy(bundle.graph).p <= c6.vertex_count());
  REQUIRE(bundle.planted);
  Graph residual = bundle.graph;
  for (const auto& member : bundle.planted->members) {
    for (auto [u, v] : appearance_host_edges(c6, member)) residual.remove_edge(u, v);
  }
  CHECK(find_appearances(c6, residual, 1).empty());

  SUBCASE("a 3-role obstacle wires the fixed W vertex") {
    Graph k23 = Graph::from_edges(5, std::vector<std::pair<int, int>>{
                                         {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
    Obstacle obs3{k23, {0, 1, 2}};
    LBParams p3{k23, obs3, -1, -1, 2000, 4};
    auto b3 = lb_construction(p3);
    CHECK(bundle_valid(b3));
    // W vertex (id 2m) participates in every planted member
    const int m = 31;  // 2m + 1 + 2 m^2 <= 2000
    CHECK(b3.planted->members.size() == static_cast<std::size_t>(m) * m);
    CHECK(b3.graph.degree(2 * m) == 2 * m * m);
    CHECK(degeneracy(b3.graph).p <= k23.vertex_count());
  }
}

TEST_CASE("two_hub_instance") {
  Graph c4 = cycle_graph(4);
  Obstacle obs{c4, {0, 2}};
  auto bundle = two_hub_instance(c4, obs, 3000, 3);
  REQUIRE(bundle.planted);
  CHECK(bundle.planted->members.size() == 1000);
  CHECK(bundle.graph.degree(0) == 2000);
  CHECK(bundle.graph.degree(1) == 2000);
  CHECK(bundle_valid(bundle));
  CHECK(packing_edge_disjoint(*bundle.planted, bundle.graph));
  CHECK(bundle.distance_lower_bound->num == 1);
  CHECK(bundle.distance_lower_bound->den == 3);
}

TEST_CASE("disjoint_copies_instance") {
  SUBCASE("K3 at fraction 1") {
    auto bundle = disjoint_copies_instance(complete_graph(3), 300, 1.0, 1);
    REQUIRE(bundle.planted);
    CHECK(bundle.planted->members.size() == 100);
    CHECK(bundle.distance_lower_bound->value() == doctest::Approx(1.0 / 3.0));
    CHECK(bundle.graph.max_degree() == 2);
    CHECK(bundle_valid(bundle));
  }
  SUBCASE("smallest fraction yielding one copy") {
    auto bundle = disjoint_copies_instance(complete_graph(3), 300, 0.011, 2);
    CHECK(bundle.planted->members.size() == 1);
    CHECK(bundle.distance_lower_bound->value() == doctest::Approx(1.0 / 300.0));
  }
  SUBCASE("fraction zero is rejected") {
    CHECK_THROWS_AS(disjoint_copies_instance(complete_graph(3), 300, 0.0, 1),
                    std::invalid_argument);
  }
  SUBCASE("max degree equals the pattern's") {
    auto bundle = disjoint_copies_instance(star_graph(5), 120, 0.5, 3);
    CHECK(bundle.graph.max_degree() == 5);
  }
}

TEST_CASE("compose_attach") {
  SUBCASE("a vertex with three pendant edges becomes a star") {
    Graph g(1);
    Graph edge = path_graph(2);
    std::vector<int> attach{0};
    Graph out = compose_attach(g, edge, 0, attach, [](int) { return 3; });
    CHECK(out == star_graph(3));
  }
  SUBCASE("vertex count accounting and degeneracy bound") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Graph g = brute::random_graph(12, 20, 12, seed);
      Graph h2 = cycle_graph(3);
      std::vector<int> attach;
      long long degree_sum = 0;
      for (int v = 0; v < g.vertex_count(); ++v) {
        attach.push_back(v);
        degree_sum += g.degree(v);
      }
      Graph out = compose_attach_by_degree(g, h2, 0, attach);
      CHECK(out.vertex_count() ==
            g.vertex_count() + (h2.vertex_count() - 1) * static_cast<int>(degree_sum));
      CHECK(degeneracy(out).p <= degeneracy(g).p + degeneracy(h2).p);
    }
  }
}

TEST_CASE("yes_instance") {
  SUBCASE("forest style is trivially cycle-free") {
    std::vector<Graph> family{cycle_graph(4)};
    auto bundle = yes_instance(family, 2000, YesStyle::forest, 5);
    CHECK(find_appearances(cycle_graph(4), bundle.graph, 1).empty());
    CHECK(degeneracy(bundle.graph).p <= 1);
  }
  SUBCASE("forest style respects star members via the degree cap") {
    std::vector<Graph> family{star_graph(10)};
    auto bundle = yes_instance(family, 1500, YesStyle::forest, 6);
    CHECK(bundle.graph.max_degree() <= 9);
  }
  SUBCASE("bounded-degree style certifies triangle-freeness exhaustively") {
    std::vector<Graph> family{complete_graph(3)};
    auto bundle = yes_instance(family, 2500, YesStyle::bounded_degree_random, 7);
    CHECK(find_appearances(complete_graph(3), bundle.graph, 1).empty());
  }
  SUBCASE("certification failure raises") {
    // no nonempty forest avoids a single edge
    std::vector<Graph> family{path_graph(2)};
    CHECK_THROWS_AS(yes_instance(family, 400, YesStyle::forest, 8), CannotCertify);
  }
  SUBCASE("deterministic per seed") {
    std::vector<Graph> family{complete_graph(3)};
    auto a = yes_instance(family, 800, YesStyle::forest, 9);
    auto b = yes_instance(family, 800, YesStyle::forest, 9);
    CHECK(graph_to_string(a.graph) == graph_to_string(b.graph));
  }
}

TEST_SUITE_END();
