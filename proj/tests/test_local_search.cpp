#include <string>
#include <vector>

#include <doctest.h>

#include "egr/case_analysis.hpp"
#include "egr/graph.hpp"
#include "reference_graphs.hpp"

using namespace egr;
using namespace egr::testing;

namespace {

bool same_trace(const std::vector<TraceStep>& a,
                const std::vector<TraceStep>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rule != b[i].rule || a[i].objects != b[i].objects ||
        a[i].values != b[i].values || a[i].conclusion != b[i].conclusion)
      return false;
  }
  return true;
}

void check_replays(const CaseVerdict& verdict) {
  for (std::size_t i = 0; i < verdict.trace.size(); ++i) {
    CAPTURE(i);
    CAPTURE(verdict.trace[i].rule);
    CHECK(replay_trace_step(verdict.params, verdict.profile,
                            verdict.trace[i]));
  }
}

void check_shape(const CaseVerdict& verdict) {
  for (const auto& step : verdict.trace) {
    REQUIRE(!step.objects.empty());
    CHECK(step.objects.front().rfind("partial:", 0) == 0);
    CHECK(!step.rule.empty());
    CHECK(!step.conclusion.empty());
  }
}

std::string canonical_string(const Graph& g) {
  return canonical_form(g).canonical_string;
}

}  // namespace

TEST_CASE("local search separates the two cube-parameter profiles") {
  const auto profiles = enumerate_layer_profiles(3, 4, 2);
  REQUIRE(profiles.size() == 2);

  // (3,0,1): three leaves and a triple vertex -- contradicted locally
  const auto bad = local_completion_search(3, 4, 2, profiles[0], 2);
  CHECK(bad.status == CaseStatus::Infeasible);
  CHECK(bad.witness_count == 0);
  CHECK(bad.witnesses.empty());
  CHECK(!bad.budget_exhausted);
  CHECK(!bad.trace.empty());
  check_shape(bad);
  check_replays(bad);

  // (0,3,0): completes to the cube
  const auto good = local_completion_search(3, 4, 2, profiles[1], 2);
  CHECK(good.status == CaseStatus::Feasible);
  CHECK(good.witness_count >= 1);
  REQUIRE(good.witnesses.size() == 1);
  CHECK(good.witnesses.front() == canonical_string(hypercube()));
  bool found_step = false;
  for (const auto& step : good.trace)
    found_step = found_step || step.rule == "witness_found";
  CHECK(found_step);
  check_shape(good);
  check_replays(good);
}

TEST_CASE("local search completes K33 from its unique profile") {
  const auto profiles = enumerate_layer_profiles(3, 4, 4);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].counts == std::vector<std::int64_t>{0, 0, 2});
  const auto verdict = local_completion_search(3, 4, 4, profiles[0], 2);
  CHECK(verdict.status == CaseStatus::Feasible);
  REQUIRE(!verdict.witnesses.empty());
  CHECK(verdict.witnesses.front() ==
        canonical_string(complete_bipartite(3, 3)));
  check_replays(verdict);
}

TEST_CASE("local search refutes both profiles of (4,4,4)") {
  const auto profiles = enumerate_layer_profiles(4, 4, 4);
  REQUIRE(profiles.size() == 2);
  for (const auto& profile : profiles) {
    CAPTURE(profile.counts[0]);
    const auto verdict = local_completion_search(4, 4, 4, profile, 2);
    CHECK(verdict.status == CaseStatus::Infeasible);
    CHECK(verdict.witnesses.empty());
    CHECK(!verdict.budget_exhausted);
    check_shape(verdict);
    check_replays(verdict);
  }
}

TEST_CASE("local search handles odd girth without a profile") {
  const auto verdict = local_completion_search(3, 5, 4, std::nullopt, 2);
  CHECK(verdict.status == CaseStatus::Feasible);
  REQUIRE(!verdict.witnesses.empty());
  CHECK(verdict.witnesses.front() == canonical_string(petersen()));
  check_shape(verdict);
  check_replays(verdict);
}

TEST_CASE("local search completes the Heawood graph") {
  const auto profiles = enumerate_layer_profiles(3, 6, 8);
  REQUIRE(profiles.size() == 1);
  const auto verdict = local_completion_search(3, 6, 8, profiles[0], 3);
  CHECK(verdict.status == CaseStatus::Feasible);
  REQUIRE(!verdict.witnesses.empty());
  CHECK(verdict.witnesses.front() == canonical_string(heawood()));
  check_replays(verdict);
}

TEST_CASE("local search is deterministic and thread-count independent") {
  const auto profiles = enumerate_layer_profiles(4, 4, 4);
  LocalSearchOptions serial;
  serial.threads = 1;
  LocalSearchOptions wide;
  wide.threads = 8;
  for (const auto& profile : profiles) {
    const auto a = local_completion_search(4, 4, 4, profile, 2, serial);
    const auto b = local_completion_search(4, 4, 4, profile, 2, serial);
    const auto c = local_completion_search(4, 4, 4, profile, 2, wide);
    CHECK(a.status == b.status);
    CHECK(same_trace(a.trace, b.trace));
    CHECK(a.witnesses == b.witnesses);
    CHECK(a.status == c.status);
    CHECK(same_trace(a.trace, c.trace));
    CHECK(a.witnesses == c.witnesses);
  }
  const auto p1 = local_completion_search(3, 5, 4, std::nullopt, 2, serial);
  const auto p8 = local_completion_search(3, 5, 4, std::nullopt, 2, wide);
  CHECK(same_trace(p1.trace, p8.trace));
  CHECK(p1.witnesses == p8.witnesses);
}

TEST_CASE("inner-phase survivors are reported with their open stubs") {
  LocalSearchOptions options;
  int calls = 0;
  options.on_inner_survivor = [&](const Graph& g,
                                  const std::vector<int>& stubs) {
    ++calls;
    for (int v : stubs) {
      REQUIRE(v >= 0);
      REQUIRE(v < g.order());
      CHECK(g.degree(v) < 3);
    }
  };
  const auto profiles = enumerate_layer_profiles(3, 4, 4);
  local_completion_search(3, 4, 4, profiles[0], 2, options);
  CHECK(calls > 0);
}

TEST_CASE("prefilter-rejected parameters yield an immediate verdict") {
  const auto verdict = local_completion_search(3, 4, 3, std::nullopt, 2);
  CHECK(verdict.status == CaseStatus::Infeasible);
  REQUIRE(verdict.trace.size() == 1);
  CHECK(verdict.trace.front().rule == "prefilter_reject");
  CHECK(verdict.trace.front().values ==
        std::vector<std::int64_t>{3, 4, 3});
  check_replays(verdict);
}

TEST_CASE("starved budgets end in Unknown, not a wrong answer") {
  LocalSearchOptions options;
  options.budget.max_nodes = 1;
  const auto profiles = enumerate_layer_profiles(3, 6, 8);
  const auto verdict = local_completion_search(3, 6, 8, profiles[0], 3,
                                               options);
  CHECK(verdict.status == CaseStatus::Unknown);
  CHECK(verdict.budget_exhausted);
  check_replays(verdict);
}

TEST_CASE("local search validates depth and profile arguments") {
  const auto profiles = enumerate_layer_profiles(3, 4, 4);
  CHECK_THROWS_AS(local_completion_search(3, 4, 4, profiles[0], 1),
                  not_applicable);
  CHECK_THROWS_AS(local_completion_search(3, 4, 4, std::nullopt, 2),
                  not_applicable);
  CHECK_THROWS_AS(local_completion_search(3, 5, 4, profiles[0], 2),
                  not_applicable);
  CHECK_THROWS_AS(local_completion_search(3, 5, 4, std::nullopt, 3),
                  not_applicable);
  LayerProfile wrong = profiles[0];
  wrong.counts = {0, 3, 0};  // cube profile, K33 parameters
  CHECK_THROWS_AS(local_completion_search(3, 4, 4, wrong, 2), bad_candidate);
  LayerProfile malformed = profiles[0];
  malformed.counts.pop_back();
  CHECK_THROWS_AS(local_completion_search(3, 4, 4, malformed, 2),
                  bad_candidate);
}
