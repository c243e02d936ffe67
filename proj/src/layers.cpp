#include "egr/layers.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "egr/cycles.hpp"

namespace egr {

LayerDecomposition decompose(const Graph& g, int root, int depth) {
  g.check_vertex(root);
  if (depth < 0) throw error("decompose: depth must be nonnegative");

  const int n = g.order();
  LayerDecomposition dec;
  dec.root = root;
  dec.depth = depth;
  dec.layer_of.assign(n, -1);
  dec.tree_parent.assign(n, -1);
  dec.branch_of.assign(n, -1);
  dec.layers.assign(depth + 1, {});

  dec.layer_of[root] = 0;
  dec.layers[0].push_back(root);
  std::queue<int> queue;
  queue.push(root);
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop();
    const int d = dec.layer_of[x];
    if (d == depth) continue;
    for (int y : g.neighbors(x)) {
      if (dec.layer_of[y] != -1) continue;
      dec.layer_of[y] = d + 1;
      dec.tree_parent[y] = x;
      dec.branch_of[y] = (d == 0) ? y : dec.branch_of[x];
      dec.layers[d + 1].push_back(y);
      queue.push(y);
    }
  }
  // BFS order within a layer is already ascending: parents are processed in
  // ascending order and each scans its adjacency ascending.  Sort anyway so
  // the invariant does not depend on queue discipline.
  for (auto& layer : dec.layers) std::sort(layer.begin(), layer.end());

  for (const Edge& e : g.edges()) {
    const bool a_in = dec.layer_of[e.a] != -1;
    const bool b_in = dec.layer_of[e.b] != -1;
    if (a_in && b_in) {
      if (dec.tree_parent[e.b] != e.a && dec.tree_parent[e.a] != e.b)
        dec.cross_edges.push_back(e);
    } else if (a_in != b_in) {
      dec.bad_edges.push_back(e);
    }
  }
  return dec;
}

LayerProfile layer_profile(const Graph& g, int root) {
  const auto k = is_regular(g);
  if (!k) throw not_regular("layer_profile: graph is not regular");
  const auto gg = girth(g);
  if (!gg) throw odd_girth_error("layer_profile: acyclic graph has no girth");
  if (*gg % 2 != 0)
    throw odd_girth_error("layer_profile: girth " + std::to_string(*gg) +
                          " is odd");
  const int t = *gg / 2;

  LayerProfile profile;
  profile.k = *k;
  profile.t = t;
  profile.counts.assign(*k, 0);

  const LayerDecomposition dec = decompose(g, root, t);
  for (int x : dec.layers[t]) {
    int back = 0;
    for (int y : g.neighbors(x))
      if (dec.layer_of[y] == t - 1) ++back;
    if (back < 1 || back > *k)
      throw error("layer_profile: impossible back-degree");
    ++profile.counts[back - 1];
  }
  return profile;
}

std::vector<Subbranch> subbranches(const LayerDecomposition& dec) {
  for (const Edge& e : dec.cross_edges) {
    // cross edges touching the outermost layer are expected (extra back
    // edges); only an edge strictly below it breaks the tree structure
    if (dec.layer_of[e.a] < dec.depth && dec.layer_of[e.b] < dec.depth)
      throw not_a_tree("subbranches: non-tree edge inside the decomposition");
  }
  std::map<int, Subbranch> by_parent;
  if (dec.depth >= 1 && dec.depth < static_cast<int>(dec.layers.size())) {
    for (int x : dec.layers[dec.depth]) {
      const int p = dec.tree_parent[x];
      auto [it, fresh] = by_parent.try_emplace(p);
      if (fresh) {
        it->second.parent = p;
        it->second.branch = dec.branch_of[x];
      }
      it->second.members.push_back(x);
    }
  }
  std::vector<Subbranch> out;
  out.reserve(by_parent.size());
  for (auto& [p, sb] : by_parent) out.push_back(std::move(sb));
  return out;
}

BadEdgeReport bad_edge_report(const LayerDecomposition& dec) {
  BadEdgeReport report;
  std::map<int, std::vector<Edge>> groups;
  for (const Edge& e : dec.bad_edges) {
    const bool a_in = dec.layer_of[e.a] != -1;
    BadEdgeInfo info;
    info.edge = e;
    info.inside = a_in ? e.a : e.b;
    info.outside = a_in ? e.b : e.a;
    info.branch = dec.branch_of[info.inside];
    info.tree_parent = dec.tree_parent[info.inside];
    report.edges.push_back(info);
    groups[info.outside].push_back(e);
  }
  report.by_outside.assign(groups.begin(), groups.end());
  return report;
}

}  // namespace egr
