#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "egr/case_analysis.hpp"
#include "egr/cycles.hpp"
#include "egr/graph.hpp"

namespace egr {

// A graph under construction by vertex augmentation.  Vertices are added one
// at a time together with their full neighbor set among existing vertices,
// so edges between existing vertices never appear later.
struct PartialGraph {
  EgrParams target;                 // the parameters being searched (v fixed)
  int n = 0;                        // vertices present so far
  std::vector<std::uint64_t> adj;   // one bit row per vertex (order <= 64)
  std::vector<int> degree;          // current degree per vertex
  // vertex pairs that must never become adjacent: joining them would close a
  // cycle shorter than g, or overfill a girth-cycle count that is already at
  // lambda on a saturated edge
  std::vector<std::pair<int, int>> forbidden_pairs;
};

struct SearchStats {
  std::int64_t nodes_expanded = 0;
  std::map<std::string, std::int64_t> prunes;  // rule name -> count
  bool complete = true;  // false when the budget truncated the run
};

struct SearchOutcome {
  EgrParams params;                  // requested (k, g, lambda); v = v_max
  std::vector<int> examined_orders;  // orders actually searched
  std::vector<std::string> results;  // canonical graph6, sorted
  SearchStats stats;
};

struct EgrSearchOptions {
  SearchBudget budget;
  int threads = 1;
  // disables the lambda overshoot/exactness prunes; the result set must not
  // change, only the statistics (property-tested)
  bool disable_lambda_pruning = false;
};

// All connected k-regular graphs on v vertices with girth >= g_min, as
// canonical graph6 strings in sorted order, pairwise non-isomorphic.
// Generation is vertex-incremental with canonical-augmentation acceptance.
// Throws parity_violation when k*v is odd.
std::vector<std::string> generate_regular(int k, int g_min, int v);

// Every connected egr(v,k,g,lambda) graph with v <= v_max, each exactly once
// up to isomorphism.  Orders of the wrong parity are skipped.  Results
// re-verify under is_egr; statistics count the branches each rule pruned.
// Intended scale: v_max <= 30 for k=3, <= 14 for k=4.
SearchOutcome search_egr(int k, int g, std::int64_t lambda, int v_max,
                         const EgrSearchOptions& options = {});

}  // namespace egr
