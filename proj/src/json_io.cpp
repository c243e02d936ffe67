#include "egr/json_io.hpp"

namespace egr {

json to_json(const EgrParams& params) {
  return json{{"v", params.v},
              {"k", params.k},
              {"g", params.g},
              {"lambda", params.lambda}};
}

json to_json(const Witness& witness) {
  json j;
  j["description"] = witness.description;
  j["vertices"] = witness.vertices;
  json edges = json::array();
  for (const Edge& e : witness.edges) edges.push_back(json::array({e.a, e.b}));
  j["edges"] = std::move(edges);
  j["paths"] = witness.paths;
  j["observed"] = witness.observed;
  j["bound"] = witness.bound;
  return j;
}

json to_json(const CheckResult& result) {
  json j;
  j["check"] = result.check_name;
  j["passed"] = result.passed;
  json witnesses = json::array();
  for (const Witness& w : result.witnesses) witnesses.push_back(to_json(w));
  j["witnesses"] = std::move(witnesses);
  j["note"] = result.note;
  return j;
}

json to_json(const LayerProfile& profile) {
  json j;
  j["k"] = profile.k;
  j["t"] = profile.t;
  j["counts"] = profile.counts;
  return j;
}

json to_json(const TraceStep& step) {
  json j;
  j["rule"] = step.rule;
  j["objects"] = step.objects;
  j["values"] = step.values;
  j["conclusion"] = step.conclusion;
  return j;
}

json to_json(const CaseVerdict& verdict) {
  json j;
  j["params"] = to_json(verdict.params);
  if (verdict.profile)
    j["profile"] = to_json(*verdict.profile);
  else
    j["profile"] = nullptr;
  j["status"] = to_string(verdict.status);
  json trace = json::array();
  for (const TraceStep& step : verdict.trace) trace.push_back(to_json(step));
  j["trace"] = std::move(trace);
  j["witness_count"] = verdict.witness_count;
  j["witnesses"] = verdict.witnesses;
  j["nodes_expanded"] = verdict.nodes_expanded;
  j["budget_exhausted"] = verdict.budget_exhausted;
  return j;
}

json to_json(const SearchOutcome& outcome) {
  json j;
  j["params"] = to_json(outcome.params);
  j["examined_orders"] = outcome.examined_orders;
  j["results"] = outcome.results;
  json stats;
  stats["nodes_expanded"] = outcome.stats.nodes_expanded;
  json prunes;
  for (const auto& [rule, count] : outcome.stats.prunes) prunes[rule] = count;
  stats["prunes"] = std::move(prunes);
  stats["complete"] = outcome.stats.complete;
  j["stats"] = std::move(stats);
  return j;
}

TraceStep trace_step_from_json(const json& j) {
  TraceStep step;
  step.rule = j.at("rule").get<std::string>();
  step.objects = j.at("objects").get<std::vector<std::string>>();
  step.values = j.at("values").get<std::vector<std::int64_t>>();
  step.conclusion = j.at("conclusion").get<std::string>();
  return step;
}

CaseVerdict case_verdict_from_json(const json& j) {
  CaseVerdict verdict;
  const json& p = j.at("params");
  verdict.params = EgrParams{p.at("v").get<int>(), p.at("k").get<int>(),
                             p.at("g").get<int>(),
                             p.at("lambda").get<std::int64_t>()};
  if (!j.at("profile").is_null()) {
    LayerProfile profile;
    profile.k = j["profile"].at("k").get<int>();
    profile.t = j["profile"].at("t").get<int>();
    profile.counts =
        j["profile"].at("counts").get<std::vector<std::int64_t>>();
    verdict.profile = profile;
  }
  const std::string status = j.at("status").get<std::string>();
  if (status == to_string(CaseStatus::Feasible))
    verdict.status = CaseStatus::Feasible;
  else if (status == to_string(CaseStatus::Infeasible))
    verdict.status = CaseStatus::Infeasible;
  else
    verdict.status = CaseStatus::Unknown;
  for (const json& step : j.at("trace"))
    verdict.trace.push_back(trace_step_from_json(step));
  verdict.witness_count = j.at("witness_count").get<std::int64_t>();
  verdict.witnesses = j.at("witnesses").get<std::vector<std::string>>();
  verdict.nodes_expanded = j.at("nodes_expanded").get<std::int64_t>();
  verdict.budget_exhausted = j.at("budget_exhausted").get<bool>();
  return verdict;
}

json make_report(const std::string& command, const std::string& input,
                 json results, const std::string& verdict,
                 std::int64_t elapsed_ms) {
  json report;
  report["schema"] = 1;
  report["command"] = command;
  report["input"] = input;
  report["results"] = std::move(results);
  report["verdict"] = verdict;
  report["elapsed_ms"] = elapsed_ms;
  return report;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace egr
