#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include <doctest.h>

#include "egr/graph.hpp"
#include "reference_graphs.hpp"

using namespace egr;
using namespace egr::testing;

TEST_CASE("from_edges builds consistent adjacency") {
  const Graph g = Graph::from_edges(4, {Edge{2, 3}, Edge{0, 1}, Edge{1, 3}});
  CHECK(g.order() == 4);
  CHECK(g.size() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_edge(3, 2));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 1);
  CHECK(g.neighbors(3) == std::vector<int>{1, 2});
  // edge list is normalized and sorted
  CHECK(g.edges() == std::vector<Edge>{Edge{0, 1}, Edge{1, 3}, Edge{2, 3}});
  // bit rows agree with has_edge
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(((g.row(a)[0] >> b) & 1) == (g.has_edge(a, b) ? 1u : 0u));
}

TEST_CASE("from_edges rejects bad input") {
  CHECK_THROWS_AS(Graph::from_edges(3, {Edge{1, 1}}), not_an_edge);
  CHECK_THROWS_AS(Graph::from_edges(3, {Edge{0, 3}}), unknown_vertex);
  CHECK_THROWS_AS(Graph::from_edges(3, {Edge{0, 1}, Edge{1, 0}}), not_an_edge);
  CHECK_THROWS_AS(Graph::from_edges(-1, {}), unsupported_order);
  CHECK_THROWS_AS(Graph().check_vertex(0), unknown_vertex);
}

TEST_CASE("graph6 codec round-trips the reference corpus") {
  CHECK(write_graph6(complete_graph(4)) == "C~");
  CHECK(write_graph6(Graph::from_edges(2, {Edge{0, 1}})) == "A_");
  CHECK(write_graph6(complete_bipartite(3, 3)) == "EFz_");
  for (const Graph& g :
       {complete_graph(4), complete_bipartite(3, 3), hypercube(), petersen(),
        heawood(), mcgee(), tutte_coxeter(), path_graph(1), path_graph(7),
        cycle_graph(62), cycle_graph(63), cycle_graph(100)}) {
    const Graph back = parse_graph6(write_graph6(g));
    CHECK(back == g);
  }
}

TEST_CASE("graph6 parser accepts the optional header") {
  CHECK(parse_graph6(">>graph6<<C~") == complete_graph(4));
}

TEST_CASE("graph6 parser rejects malformed input") {
  CHECK_THROWS_AS(parse_graph6(""), malformed_encoding);
  CHECK_THROWS_AS(parse_graph6("C~~"), malformed_encoding);   // trailing bytes
  CHECK_THROWS_AS(parse_graph6("C"), malformed_encoding);     // truncated
  CHECK_THROWS_AS(parse_graph6("C\x07"), malformed_encoding); // byte below 63
  CHECK_THROWS_AS(parse_graph6("B~"), malformed_encoding);    // nonzero padding
  CHECK_THROWS_AS(parse_graph6("~??A"), malformed_encoding);  // long form, tiny n
}

TEST_CASE("graph6 order limits") {
  // The writer handles every order the parser accepts, up to the cap.
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < MAX_GRAPH6_ORDER + 1; ++i) edges.push_back(Edge{i, i + 1});
  CHECK_THROWS_AS(write_graph6(Graph::from_edges(MAX_GRAPH6_ORDER + 1, edges)),
                  unsupported_order);
}

TEST_CASE("read_graph6_file reads one graph per line") {
  const std::string path = "graph_core_input.g6";
  {
    std::ofstream out(path);
    out << ">>graph6<<C~\n";
    out << "EFz_\n";
    out << "\n";
    out << write_graph6(petersen()) << "\n";
  }
  const auto graphs = read_graph6_file(path);
  REQUIRE(graphs.size() == 3);
  CHECK(graphs[0] == complete_graph(4));
  CHECK(graphs[1] == complete_bipartite(3, 3));
  CHECK(graphs[2] == petersen());
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_graph6_file("does_not_exist.g6"), error);
}

TEST_CASE("is_regular") {
  CHECK(is_regular(complete_graph(4)) == 3);
  CHECK(is_regular(cycle_graph(6)) == 2);
  CHECK(is_regular(Graph::from_edges(3, {})) == 0);
  CHECK(!is_regular(path_graph(3)).has_value());
  CHECK(!is_regular(two_triangles_bridge()).has_value());
}

TEST_CASE("connected_components") {
  const Graph u = disjoint_union(complete_graph(4), complete_bipartite(3, 3));
  const auto comps = connected_components(u);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() == 4);
  CHECK(comps[1].size() == 6);
  CHECK(connected_components(complete_graph(1)).size() == 1);
  CHECK(connected_components(Graph::from_edges(3, {})).size() == 3);
}

TEST_CASE("edge connectivity and minimum cuts") {
  CHECK(edge_connectivity(complete_graph(4)) == 3);
  CHECK(edge_connectivity(complete_bipartite(3, 3)) == 3);
  CHECK(edge_connectivity(cycle_graph(6)) == 2);
  CHECK(edge_connectivity(path_graph(5)) == 1);
  CHECK(edge_connectivity(two_triangles_bridge()) == 1);
  CHECK(edge_connectivity(petersen()) == 3);
  CHECK(edge_connectivity(disjoint_union(complete_graph(4), complete_graph(4))) == 0);

  for (const Graph& g : {complete_graph(4), cycle_graph(6), petersen(),
                         two_triangles_bridge(), heawood()}) {
    const auto cut = minimum_edge_cut(g);
    CHECK(static_cast<int>(cut.size()) == edge_connectivity(g));
    // removing the cut disconnects the graph
    std::set<Edge> removed(cut.begin(), cut.end());
    std::vector<Edge> rest;
    for (const Edge& e : g.edges())
      if (!removed.count(e)) rest.push_back(e);
    const Graph pruned = Graph::from_edges(g.order(), rest);
    CHECK(connected_components(pruned).size() > 1);
  }
  CHECK(minimum_edge_cut(two_triangles_bridge()) ==
        std::vector<Edge>{Edge{2, 3}});
}

TEST_CASE("permute relabels consistently") {
  const Graph g = petersen();
  std::vector<int> relabeling{3, 1, 4, 0, 5, 9, 2, 6, 8, 7};
  const Graph h = permute(g, relabeling);
  CHECK(h.order() == g.order());
  CHECK(h.size() == g.size());
  for (const Edge& e : g.edges())
    CHECK(h.has_edge(relabeling[static_cast<std::size_t>(e.a)],
                     relabeling[static_cast<std::size_t>(e.b)]));
  CHECK_THROWS_AS(permute(g, {0, 1}), error);
}
