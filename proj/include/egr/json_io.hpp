#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "egr/case_analysis.hpp"
#include "egr/cycles.hpp"
#include "egr/graph.hpp"
#include "egr/layers.hpp"
#include "egr/lemmas.hpp"
#include "egr/search.hpp"

namespace egr {

// Ordered documents keep key order stable, which makes parse -> dump a
// byte-identical round trip for anything this module emitted.
using json = nlohmann::ordered_json;

json to_json(const EgrParams& params);
json to_json(const Witness& witness);
json to_json(const CheckResult& result);
json to_json(const LayerProfile& profile);
json to_json(const TraceStep& step);
json to_json(const CaseVerdict& verdict);
json to_json(const SearchOutcome& outcome);

TraceStep trace_step_from_json(const json& j);
CaseVerdict case_verdict_from_json(const json& j);

// Top-level report wrapper: {"schema": 1, "command": ..., "input": ...,
// "results": payload, "verdict": ..., "elapsed_ms": ...}.
json make_report(const std::string& command, const std::string& input,
                 json results, const std::string& verdict,
                 std::int64_t elapsed_ms);

// Canonical serialization used everywhere a report is written: two-space
// indent and a trailing newline.
std::string dump_report(const json& report);

}  // namespace egr
