#include <doctest.h>

#include "egr/layers.hpp"
#include "reference_graphs.hpp"

using namespace egr;
using namespace egr::testing;

TEST_CASE("decompose produces deterministic BFS layers") {
  const Graph g = complete_bipartite(3, 3);
  const auto dec = decompose(g, 0, 2);
  CHECK(dec.root == 0);
  CHECK(dec.depth == 2);
  REQUIRE(dec.layers.size() == 3);
  CHECK(dec.layers[0] == std::vector<int>{0});
  CHECK(dec.layers[1] == std::vector<int>{3, 4, 5});
  CHECK(dec.layers[2] == std::vector<int>{1, 2});
  CHECK(dec.tree_parent[0] == -1);
  CHECK(dec.branch_of[0] == -1);
  // FIFO queue, ascending adjacency: vertex 3 discovers 1 and 2 first
  CHECK(dec.tree_parent[1] == 3);
  CHECK(dec.tree_parent[2] == 3);
  CHECK(dec.branch_of[1] == 3);
  CHECK(dec.branch_of[4] == 4);
  // the whole graph is inside, so no bad edges
  CHECK(dec.bad_edges.empty());
  // 9 edges total, 5 BFS tree edges, so 4 cross edges
  CHECK(dec.cross_edges.size() == 4);
}

TEST_CASE("decompose marks outside vertices") {
  const Graph g = petersen();
  const auto dec = decompose(g, 0, 1);
  REQUIRE(dec.layers.size() == 2);
  CHECK(dec.layers[0] == std::vector<int>{0});
  CHECK(dec.layers[1] == std::vector<int>{1, 4, 5});
  int outside = 0;
  for (int v = 0; v < 10; ++v)
    if (dec.layer_of[v] == -1) {
      ++outside;
      CHECK(dec.tree_parent[v] == -1);
      CHECK(dec.branch_of[v] == -1);
    }
  CHECK(outside == 6);
  // each inside frontier vertex has 2 edges leaving the ball
  CHECK(dec.bad_edges.size() == 6);
  CHECK(dec.cross_edges.empty());
}

TEST_CASE("layer_profile on the realizing references") {
  // every reference here is vertex-transitive, so the root cannot matter
  for (int root = 0; root < 8; ++root)
    CHECK(layer_profile(hypercube(), root) ==
          LayerProfile{3, 2, {0, 3, 0}});
  for (int root = 0; root < 6; ++root)
    CHECK(layer_profile(complete_bipartite(3, 3), root) ==
          LayerProfile{3, 2, {0, 0, 2}});
  for (int root = 0; root < 14; ++root)
    CHECK(layer_profile(heawood(), root) ==
          LayerProfile{3, 3, {0, 0, 4}});
  CHECK(layer_profile(complete_bipartite(4, 4), 0) ==
        LayerProfile{4, 2, {0, 0, 0, 3}});
  CHECK(layer_profile(tutte_coxeter(), 0) ==
        LayerProfile{3, 4, {0, 0, 8}});
}

TEST_CASE("layer_profile rejects odd girth and irregularity") {
  CHECK_THROWS_AS(layer_profile(petersen(), 0), odd_girth_error);
  CHECK_THROWS_AS(layer_profile(complete_graph(4), 0), odd_girth_error);
  CHECK_THROWS_AS(layer_profile(two_triangles_bridge(), 0), not_regular);
  CHECK_THROWS_AS(layer_profile(Graph::from_edges(3, {}), 0),
                  odd_girth_error);
}

TEST_CASE("subbranches partition the frontier by tree parent") {
  const auto dec = decompose(heawood(), 0, 3);
  const auto subs = subbranches(dec);
  // 4 outermost vertices across at most 4 distinct parents
  std::size_t members = 0;
  for (const auto& sb : subs) {
    members += sb.members.size();
    for (int x : sb.members) {
      CHECK(dec.tree_parent[x] == sb.parent);
      CHECK(dec.branch_of[x] == sb.branch);
      CHECK(dec.layer_of[x] == 3);
    }
  }
  CHECK(members == dec.layers[3].size());
}

TEST_CASE("subbranches reject interior cross edges") {
  // the prism has a triangle next to the root, i.e. a cross edge strictly
  // inside a depth-2 ball
  CHECK_THROWS_AS(subbranches(decompose(prism(), 0, 2)), not_a_tree);
}

TEST_CASE("bad_edge_report annotates and groups leaving edges") {
  const Graph g = hypercube();
  const auto dec = decompose(g, 0, 1);
  const auto report = bad_edge_report(dec);
  REQUIRE(report.edges.size() == 6);
  for (const auto& info : report.edges) {
    CHECK(dec.layer_of[info.inside] == 1);
    CHECK(dec.layer_of[info.outside] == -1);
    CHECK(info.tree_parent == 0);
    CHECK(info.branch == info.inside);
  }
  // outside endpoints 3, 5, 6 each receive two edges
  REQUIRE(report.by_outside.size() == 3);
  CHECK(report.by_outside[0].first == 3);
  CHECK(report.by_outside[1].first == 5);
  CHECK(report.by_outside[2].first == 6);
  for (const auto& [outside, edges] : report.by_outside)
    CHECK(edges.size() == 2);
}
