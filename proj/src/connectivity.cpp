#include "egr/graph.hpp"

#include <algorithm>
#include <queue>

namespace egr {
namespace {

// Unit-capacity max-flow (BFS augmenting paths).  Each undirected edge becomes
// a pair of arcs with capacity 1 in each direction; the value of a max s-t
// flow equals the size of a minimum s-t edge cut.
struct FlowNet {
  struct Arc {
    int to;
    int cap;
  };
  std::vector<Arc> arcs;               // arc 2i and 2i^1 are partners
  std::vector<std::vector<int>> out;   // arc indices per vertex

  explicit FlowNet(const Graph& g) : out(g.order()) {
    for (const Edge& e : g.edges()) {
      out[e.a].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({e.b, 1});
      out[e.b].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({e.a, 1});
    }
  }

  // Vertices reachable from s along arcs with residual capacity; after a
  // maximum flow this set defines a minimum cut.
  std::vector<char> residual_reachable(int s) const {
    std::vector<char> seen(out.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int ai : out[v]) {
        const Arc& a = arcs[ai];
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          q.push(a.to);
        }
      }
    }
    return seen;
  }

  int max_flow(int s, int t, int stop_at) {
    for (auto& a : arcs) a.cap = 1;
    int flow = 0;
    std::vector<int> pred_arc(out.size());
    while (flow < stop_at) {
      std::fill(pred_arc.begin(), pred_arc.end(), -1);
      std::queue<int> q;
      q.push(s);
      pred_arc[s] = -2;
      while (!q.empty() && pred_arc[t] == -1) {
        int v = q.front();
        q.pop();
        for (int ai : out[v]) {
          const Arc& a = arcs[ai];
          if (a.cap > 0 && pred_arc[a.to] == -1) {
            pred_arc[a.to] = ai;
            q.push(a.to);
          }
        }
      }
      if (pred_arc[t] == -1) break;
      for (int v = t; v != s;) {
        int ai = pred_arc[v];
        arcs[ai].cap -= 1;
        arcs[ai ^ 1].cap += 1;
        v = arcs[ai ^ 1].to;
      }
      ++flow;
    }
    return flow;
  }
};

}  // namespace

int edge_connectivity(const Graph& g) {
  if (g.order() < 2) return 0;
  if (connected_components(g).size() > 1) return 0;
  // The minimum cut separates vertex 0 from at least one other vertex, so the
  // minimum over all flows from 0 suffices.  Capped by min degree.
  int best = g.order();
  for (int v = 0; v < g.order(); ++v) best = std::min(best, g.degree(v));
  FlowNet net(g);
  for (int t = 1; t < g.order(); ++t) best = std::min(best, net.max_flow(0, t, best));
  return best;
}

std::vector<Edge> minimum_edge_cut(const Graph& g) {
  if (g.order() < 2) return {};
  if (connected_components(g).size() > 1) return {};
  int min_deg_vertex = 0;
  for (int v = 1; v < g.order(); ++v)
    if (g.degree(v) < g.degree(min_deg_vertex)) min_deg_vertex = v;
  int best = g.degree(min_deg_vertex);
  FlowNet net(g);
  int best_t = -1;
  for (int t = 1; t < g.order(); ++t) {
    const int f = net.max_flow(0, t, best);
    if (f < best) {  // strict improvement, so this flow was not truncated
      best = f;
      best_t = t;
    }
  }
  if (best_t == -1) {
    // No pair beat the degree cap, so the connectivity equals the minimum
    // degree and the star of a minimum-degree vertex is a minimum cut.
    std::vector<Edge> cut;
    for (const Edge& e : g.edges())
      if (e.a == min_deg_vertex || e.b == min_deg_vertex) cut.push_back(e);
    return cut;
  }
  // Re-saturate the best pair, then read the cut off the residual graph: the
  // cut edges are exactly those crossing the reachable set.
  net.max_flow(0, best_t, best);
  const std::vector<char> side = net.residual_reachable(0);
  std::vector<Edge> cut;
  for (const Edge& e : g.edges())
    if (side[e.a] != side[e.b]) cut.push_back(e);
  return cut;
}

}  // namespace egr
