#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "egr/cycles.hpp"
#include "egr/graph.hpp"
#include "egr/layers.hpp"

namespace egr {

// Cheap necessary conditions on (k, g, lambda).  Returns the rejection
// reason, or nullopt when the triple passes (which is necessary, not
// sufficient, for existence).
std::optional<std::string> feasibility_prefilter(int k, int g,
                                                 std::int64_t lambda);

// All outer-layer profiles (n_1..n_k) compatible with the counting
// identities for even girth g=2t:
//   sum i*n_i = k(k-1)^{t-1}   and   sum C(i,2)*n_i = k*lambda/2.
// Sorted in descending lexicographic order, matching the order in which the
// case analyses treat them.  Throws odd_girth_error for odd g.
std::vector<LayerProfile> enumerate_layer_profiles(int k, int g,
                                                   std::int64_t lambda);

// Exact vertex count forced when lambda sits at its ceiling
// (k-1)^{(g-1)/2} - 1 for odd girth: 1 + k*sum_{j=0}^{(g-3)/2}(k-1)^j + 1.
// Throws even_girth_error for even g and degree_too_small for k < 3
// (the formula needs k > 2).
std::int64_t upper_limit_order(int k, int g);

// Imported published search results; a static table, never derived here.
struct KnownFact {
  int v = 0;
  int k = 0;
  int g = 0;
  std::int64_t lambda = 0;
  bool exists = false;
  std::string source;
};

std::optional<KnownFact> known_nonexistence_oracle(int v, int k, int g,
                                                   std::int64_t lambda);

enum class CaseStatus { Feasible, Infeasible, Unknown };

std::string to_string(CaseStatus status);

// One deduction recorded by the local search.  objects[0] is always
// "partial:<graph6>" (the structure the rule fired on); further entries name
// the objects involved ("edge:a-b", "path:a-b-c", "vertex:v",
// "cutedge:a-b", "cutstub:v", "deferred:v,w,...", "quotas:i,i,...").
struct TraceStep {
  std::string rule;
  std::vector<std::string> objects;
  std::vector<std::int64_t> values;
  std::string conclusion;
};

struct CaseVerdict {
  EgrParams params;  // v = 0 means the order is unconstrained
  std::optional<LayerProfile> profile;
  CaseStatus status = CaseStatus::Unknown;
  std::vector<TraceStep> trace;
  std::int64_t witness_count = 0;
  // canonical graph6 strings of the distinct completions found
  std::vector<std::string> witnesses;
  std::int64_t nodes_expanded = 0;
  bool budget_exhausted = false;
};

struct SearchBudget {
  std::int64_t max_nodes = 100000000;
  double max_seconds = 3600.0;
};

struct LocalSearchOptions {
  SearchBudget budget;
  int threads = 1;
  // recursion cap on rings of fresh outside vertices
  int max_outside_levels = 6;
  std::int64_t max_trace_steps = 20000;
  // Test hook: called for every partial structure that survives the
  // inner-edge phase, with the stub owners (unsaturated vertices, repeated
  // per missing edge).
  std::function<void(const Graph&, const std::vector<int>&)>
      on_inner_survivor;
};

// Mechanized local nonexistence search around the forced distance-`depth`
// tree of a hypothetical egr(v,k,g,lambda) graph.  For even g, depth must be
// g/2 and a profile from enumerate_layer_profiles is required; for odd g,
// depth must be (g-1)/2 and no profile applies.  See CaseVerdict for the
// outcome encoding; budget exhaustion yields status Unknown, never a throw.
CaseVerdict local_completion_search(int k, int g, std::int64_t lambda,
                                    const std::optional<LayerProfile>& profile,
                                    int depth,
                                    const LocalSearchOptions& options = {});

// Re-derives a recorded deduction from its partial structure using the same
// rule implementations but independent counting, so traces can be audited
// without trusting the search's incremental state.  True when the step's
// claimed contradiction (or informational fact) reproduces.
bool replay_trace_step(const EgrParams& params,
                       const std::optional<LayerProfile>& profile,
                       const TraceStep& step);

}  // namespace egr
