#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "egr/graph.hpp"

namespace egr {

// Length of a shortest cycle; absent when the graph is acyclic (the "no
// girth" sentinel -- never a magic large number).
std::optional<int> girth(const Graph& g);

// Number of simple cycles of length len that contain the given edge / vertex
// / path.  Cycles are counted once each (not per orientation).  The path
// variant counts cycles containing p as a consecutive segment in either
// direction; p must be a simple path on 2..len vertices.
std::int64_t count_g_cycles_through_edge(const Graph& g, Edge e, int len);
std::int64_t count_g_cycles_through_vertex(const Graph& g, int x, int len);
std::int64_t count_g_cycles_through_path(const Graph& g, const std::vector<int>& p, int len);

// All shortest cycles, one per cycle, written with the smallest vertex first
// and its smaller cycle-neighbor second.  Throws acyclic_graph if there is no
// cycle at all.
std::vector<std::vector<int>> enumerate_shortest_cycles(const Graph& g);

// All simple cycles of exactly the given length, in the same normal form as
// enumerate_shortest_cycles.  Throws error for len < 3.
std::vector<std::vector<int>> enumerate_cycles_of_length(const Graph& g,
                                                         int len);

// Per-edge / per-vertex counts of shortest cycles.  edge_counts is parallel
// to g.edges().
struct LambdaProfile {
  std::optional<int> girth_value;
  std::vector<std::int64_t> edge_counts;
  std::vector<std::int64_t> vertex_counts;

  // the common per-edge count, if the counts are constant (and nonempty)
  std::optional<std::int64_t> constant_edge_count() const;
};

LambdaProfile lambda_profile(const Graph& g, int threads = 1);

// Parameter quadruple of an edge-girth-regular graph: every vertex has degree
// k, the girth is g, and every edge lies on exactly lambda shortest cycles.
struct EgrParams {
  int v = 0;
  int k = 0;
  int g = 0;
  std::int64_t lambda = 0;

  friend bool operator==(const EgrParams&, const EgrParams&) = default;

  // v >= 1, k >= 3, g >= 3, lambda >= 1, k*lambda even
  void validate() const;
};

// The parameters if g qualifies (k-regular with k >= 3, finite girth,
// constant per-edge shortest-cycle count); absent otherwise.  The property is
// evaluated globally, so a disconnected union of isomorphic qualifying graphs
// qualifies as well.
std::optional<EgrParams> is_egr(const Graph& g, int threads = 1);

}  // namespace egr
