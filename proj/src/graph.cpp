#include "egr/graph.hpp"

#include <algorithm>
#include <queue>

namespace egr {

Graph Graph::from_edges(int order, const std::vector<Edge>& edges) {
  if (order < 0) throw unsupported_order("graph order must be non-negative");
  Graph g;
  g.n_ = order;
  g.words_ = order == 0 ? 1 : (order + 63) / 64;
  g.rows_.assign(static_cast<std::size_t>(std::max(order, 1)) * g.words_, 0);
  g.adj_.assign(order, {});
  g.edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.a == e.b) throw not_an_edge("loops are not allowed");
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a < 0 || e.b >= order)
      throw unknown_vertex("edge endpoint out of range");
    std::uint64_t& word = g.rows_[static_cast<std::size_t>(e.a) * g.words_ + e.b / 64];
    std::uint64_t bit = 1ULL << (e.b % 64);
    if (word & bit) throw not_an_edge("duplicate edge");
    word |= bit;
    g.rows_[static_cast<std::size_t>(e.b) * g.words_ + e.a / 64] |= 1ULL << (e.a % 64);
    g.adj_[e.a].push_back(e.b);
    g.adj_[e.b].push_back(e.a);
    g.edges_.push_back(e);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  std::sort(g.edges_.begin(), g.edges_.end());
  return g;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw unknown_vertex("vertex index out of range");
}

bool Graph::has_edge(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  if (a == b) return false;
  return (row(a)[b / 64] >> (b % 64)) & 1u;
}

int Graph::degree(int v) const {
  check_vertex(v);
  return static_cast<int>(adj_[v].size());
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_vertex(v);
  return adj_[v];
}

std::optional<int> is_regular(const Graph& g) {
  if (g.order() == 0) return std::nullopt;
  int k = g.degree(0);
  for (int v = 1; v < g.order(); ++v)
    if (g.degree(v) != k) return std::nullopt;
  return k;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.order(), 0);
  for (int s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      comp.push_back(v);
      for (int w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;  // scan order already yields smallest-vertex ordering
}

Graph permute(const Graph& g, const std::vector<int>& relabeling) {
  if (static_cast<int>(relabeling.size()) != g.order())
    throw error("relabeling size does not match graph order");
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    int a = relabeling[e.a], b = relabeling[e.b];
    edges.push_back(a < b ? Edge{a, b} : Edge{b, a});
  }
  return Graph::from_edges(g.order(), edges);
}

}  // namespace egr
