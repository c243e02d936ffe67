#include "reference_graphs.hpp"

#include <set>
#include <stdexcept>

namespace egr::testing {

namespace {

Edge mk(int a, int b) {
  if (a == b) throw std::invalid_argument("loop in reference construction");
  if (a > b) std::swap(a, b);
  return Edge{a, b};
}

}  // namespace

Graph lcf_graph(int n, const std::vector<int>& shifts) {
  std::set<Edge> edges;
  for (int i = 0; i < n; ++i) edges.insert(mk(i, (i + 1) % n));
  for (int i = 0; i < n; ++i) {
    const int shift = shifts[static_cast<std::size_t>(i) % shifts.size()];
    edges.insert(mk(i, ((i + shift) % n + n) % n));
  }
  return Graph::from_edges(n, {edges.begin(), edges.end()});
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.push_back(Edge{a, b});
  return Graph::from_edges(n, edges);
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.push_back(mk(i, a + j));
  return Graph::from_edges(a + b, edges);
}

Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(mk(i, (i + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back(Edge{i, i + 1});
  return Graph::from_edges(n, edges);
}

Graph prism() {
  return Graph::from_edges(6, {Edge{0, 1}, Edge{1, 2}, Edge{0, 2},
                               Edge{3, 4}, Edge{4, 5}, Edge{3, 5},
                               Edge{0, 3}, Edge{1, 4}, Edge{2, 5}});
}

Graph hypercube() {
  std::vector<Edge> edges;
  for (int a = 0; a < 8; ++a)
    for (int bit = 0; bit < 3; ++bit) {
      const int b = a ^ (1 << bit);
      if (a < b) edges.push_back(Edge{a, b});
    }
  return Graph::from_edges(8, edges);
}

Graph petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back(mk(i, (i + 1) % 5));          // outer pentagon
    edges.push_back(mk(5 + i, 5 + (i + 2) % 5));  // inner pentagram
    edges.push_back(mk(i, 5 + i));                // spokes
  }
  return Graph::from_edges(10, edges);
}

Graph heawood() { return lcf_graph(14, {5, -5}); }

Graph mcgee() { return lcf_graph(24, {12, 7, -7}); }

Graph tutte_coxeter() { return lcf_graph(30, {-13, -9, 7, -7, 9, 13}); }

Graph theta_graph(int paths, int length) {
  std::vector<Edge> edges;
  int next = 2;
  for (int p = 0; p < paths; ++p) {
    int prev = 0;
    for (int step = 0; step < length - 1; ++step) {
      edges.push_back(mk(prev, next));
      prev = next++;
    }
    edges.push_back(mk(prev, 1));
  }
  return Graph::from_edges(next, edges);
}

Graph two_triangles_bridge() {
  return Graph::from_edges(6, {Edge{0, 1}, Edge{1, 2}, Edge{0, 2},
                               Edge{3, 4}, Edge{4, 5}, Edge{3, 5},
                               Edge{2, 3}});
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges())
    edges.push_back(Edge{e.a + a.order(), e.b + a.order()});
  return Graph::from_edges(a.order() + b.order(), edges);
}

}  // namespace egr::testing
