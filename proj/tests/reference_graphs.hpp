#pragma once

#include <vector>

#include "egr/graph.hpp"

namespace egr::testing {

// Cycle 0..n-1 plus the chord i -> i + shifts[i mod shifts.size()] for every
// i (LCF-style).  Chords arising twice are deduplicated.
Graph lcf_graph(int n, const std::vector<int>& shifts);

Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);
Graph path_graph(int n);

Graph prism();            // the triangular prism
Graph hypercube();        // Q3, the 3-dimensional cube
Graph petersen();
Graph heawood();
Graph mcgee();
Graph tutte_coxeter();

// `paths` internally disjoint paths of the given edge length between two hub
// vertices 0 and 1.
Graph theta_graph(int paths, int length);

// Two triangles joined by a single bridge edge; the smallest graph with a
// cut edge between two 2-edge-connected blocks.
Graph two_triangles_bridge();

Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace egr::testing
