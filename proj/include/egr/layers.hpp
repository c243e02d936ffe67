#pragma once

#include <cstdint>
#include <vector>

#include "egr/graph.hpp"

namespace egr {

// BFS decomposition around a root, truncated at a chosen depth.  Vertices at
// distance <= depth form the "inside"; the outermost inside layer is the
// frontier the local analyses reason about.
struct LayerDecomposition {
  int root = 0;
  int depth = 0;
  // distance from root for inside vertices, -1 outside
  std::vector<int> layer_of;
  // BFS tree parent; -1 for the root and for outside vertices.  The parent is
  // the neighbor that discovers the vertex first when the queue is FIFO and
  // adjacency lists are scanned in ascending order.
  std::vector<int> tree_parent;
  // the root-neighbor whose subtree contains the vertex; -1 for the root and
  // for outside vertices
  std::vector<int> branch_of;
  // inside vertices grouped by distance: layers[i] sorted ascending
  std::vector<std::vector<int>> layers;
  // non-tree edges with both endpoints inside
  std::vector<Edge> cross_edges;
  // edges with exactly one endpoint inside (that endpoint is necessarily on
  // the outermost layer)
  std::vector<Edge> bad_edges;
};

LayerDecomposition decompose(const Graph& g, int root, int depth);

// For even girth 2t in a k-regular graph: counts[i-1] = number of outermost
// layer (distance t) vertices with exactly i edges back to distance t-1.
// Degree-0 back-edges cannot occur, so counts run from 1 to k.
struct LayerProfile {
  int k = 0;
  int t = 0;
  std::vector<std::int64_t> counts;

  friend bool operator==(const LayerProfile&, const LayerProfile&) = default;
};

// Throws odd_girth_error if the girth is odd (or the graph is acyclic), and
// not_regular if the graph is not regular.
LayerProfile layer_profile(const Graph& g, int root);

// Group of outermost-layer vertices sharing a BFS tree parent.
struct Subbranch {
  int parent = 0;             // shared tree parent (one layer up)
  int branch = 0;             // branch label of the members
  std::vector<int> members;   // ascending
};

// Partition of the outermost layer by tree parent, ordered by parent vertex.
// Requires the inside of the decomposition strictly below the outermost layer
// to be a tree (no cross edges there); throws not_a_tree otherwise.
std::vector<Subbranch> subbranches(const LayerDecomposition& dec);

// One edge leaving the decomposition, annotated with the inside endpoint's
// position.
struct BadEdgeInfo {
  Edge edge;
  int inside = 0;
  int outside = 0;
  int branch = 0;        // branch of the inside endpoint
  int tree_parent = 0;   // subbranch tag of the inside endpoint
};

struct BadEdgeReport {
  std::vector<BadEdgeInfo> edges;  // in edge-list order
  // bad edges grouped by their shared outside endpoint, ascending by that
  // endpoint; groups of size >= 2 are the interesting ones
  std::vector<std::pair<int, std::vector<Edge>>> by_outside;
};

BadEdgeReport bad_edge_report(const LayerDecomposition& dec);

}  // namespace egr
