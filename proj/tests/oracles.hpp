#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egr/cycles.hpp"
#include "egr/graph.hpp"

namespace egr::testing {

// Brute-force counterparts of the library's counting and canonicalization
// routines.  They share no code with the fast paths: plain path DFS for
// cycles, a full order! sweep for canonical forms and automorphisms, and
// direct adjacency backtracking for labeled counts.  Small orders only.

// Every simple cycle of exactly `len` edges, one entry per cycle, in the
// library's normal form (smallest vertex first, its smaller cycle-neighbor
// second).
std::vector<std::vector<int>> naive_cycles_of_length(const Graph& g, int len);

std::optional<int> naive_girth(const Graph& g);

// Cycles of length `len` containing the given edge (as a consecutive pair) /
// the given path (as a consecutive segment, either direction).
std::int64_t naive_count_through_edge(const Graph& g, Edge e, int len);
std::int64_t naive_count_through_path(const Graph& g,
                                      const std::vector<int>& path, int len);

std::optional<EgrParams> naive_is_egr(const Graph& g);

// Lexicographically smallest graph6 string over all order! relabelings.
std::string naive_canonical_graph6(const Graph& g);

std::int64_t naive_automorphism_count(const Graph& g);

bool naive_isomorphic(const Graph& a, const Graph& b);

// Number of labeled k-regular graphs on v vertices with girth >= g_min,
// optionally restricted to connected ones, by backtracking over each
// vertex's choice of higher-numbered neighbors.
std::int64_t labeled_regular_count(int k, int g_min, int v,
                                   bool connected_only);

}  // namespace egr::testing
