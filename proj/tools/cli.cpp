#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egr/case_analysis.hpp"
#include "egr/cycles.hpp"
#include "egr/graph.hpp"
#include "egr/json_io.hpp"
#include "egr/layers.hpp"
#include "egr/lemmas.hpp"
#include "egr/search.hpp"

namespace egr::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Common {
  bool json = false;
  int threads = 1;
  std::uint64_t seed = 0;
  double timeout_secs = 3600.0;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// One graph6 line of input.  lineno is 1-based within the source file and 0
// for a graph given directly on the command line.
struct InputLine {
  int lineno = 0;
  std::string text;
  std::optional<Graph> graph;
  std::string error;
};

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Accepts either a literal graph6 string or a path to a file of them (one
// per line, optional ">>graph6<<" header).  A malformed line in a file is
// recorded and processing continues; a malformed literal throws.
std::vector<InputLine> load_input(const std::string& input) {
  std::vector<InputLine> out;
  if (!std::filesystem::is_regular_file(input)) {
    InputLine line;
    line.text = input;
    line.graph = parse_graph6(input);
    out.push_back(std::move(line));
    return out;
  }
  std::ifstream in(input);
  if (!in) throw error("cannot open input file: " + input);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string text = trimmed(raw);
    static const std::string kHeader = ">>graph6<<";
    if (text.rfind(kHeader, 0) == 0) text = text.substr(kHeader.size());
    if (text.empty()) continue;
    InputLine line;
    line.lineno = lineno;
    line.text = text;
    try {
      line.graph = parse_graph6(text);
    } catch (const error& e) {
      line.error = e.what();
    }
    out.push_back(std::move(line));
  }
  if (out.empty()) throw error("no graphs in input file: " + input);
  return out;
}

std::string label(const InputLine& line) {
  if (line.lineno == 0) return line.text;
  return "line " + std::to_string(line.lineno) + " (" + line.text + ")";
}

std::string profile_text(const LayerProfile& profile) {
  std::string s = "(";
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(profile.counts[i]);
  }
  s += ")";
  return s;
}

std::string params_text(const EgrParams& p) {
  return "egr(" + std::to_string(p.v) + "," + std::to_string(p.k) + "," +
         std::to_string(p.g) + "," + std::to_string(p.lambda) + ")";
}

// ---------------------------------------------------------------------------
// check

int cmd_check(const std::vector<InputLine>& lines, const Common& common,
              const std::string& input_desc, std::ostream& out) {
  Timer timer;
  json results = json::array();
  bool all_pass = true;
  for (const auto& line : lines) {
    json entry;
    entry["input"] = line.text;
    if (!line.graph) {
      all_pass = false;
      entry["error"] = line.error;
      entry["egr"] = false;
      if (!common.json)
        out << label(line) << ": error: " << line.error << "\n";
      results.push_back(std::move(entry));
      continue;
    }
    const Graph& g = *line.graph;
    const auto params = is_egr(g, common.threads);
    const auto degree = is_regular(g);
    const auto girth_value = girth(g);
    entry["order"] = g.order();
    entry["degree"] = degree ? json(*degree) : json(nullptr);
    entry["girth"] = girth_value ? json(*girth_value) : json(nullptr);
    entry["egr"] = params.has_value();
    entry["params"] = params ? to_json(*params) : json(nullptr);
    if (params) {
      if (!common.json) out << label(line) << ": " << params_text(*params) << "\n";
      results.push_back(std::move(entry));
      continue;
    }
    all_pass = false;
    std::string reason;
    if (!degree) {
      reason = "irregular degrees";
    } else if (*degree < 3) {
      reason = "regular of degree " + std::to_string(*degree) +
               ", which is below 3";
    } else if (!girth_value) {
      reason = "acyclic";
    } else {
      const auto profile = lambda_profile(g, common.threads);
      const auto [lo, hi] = std::minmax_element(profile.edge_counts.begin(),
                                                profile.edge_counts.end());
      reason = "per-edge shortest-cycle counts vary in [" +
               std::to_string(*lo) + "," + std::to_string(*hi) + "]";
      entry["lambda_min"] = *lo;
      entry["lambda_max"] = *hi;
    }
    entry["reason"] = reason;
    if (!common.json)
      out << label(line) << ": not edge-girth-regular (" << reason << ")\n";
    results.push_back(std::move(entry));
  }
  if (common.json)
    out << dump_report(make_report("check", input_desc, std::move(results),
                                   all_pass ? "pass" : "fail",
                                   timer.elapsed_ms()));
  return all_pass ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------------------
// lemmas

int cmd_lemmas(const std::vector<InputLine>& lines, const Common& common,
               const std::optional<int>& k_opt,
               const std::optional<std::int64_t>& lambda_opt,
               const std::optional<Graph>& forbid, bool exhaustive_cuts,
               const std::string& input_desc, std::ostream& out) {
  Timer timer;
  json results = json::array();
  bool all_pass = true;
  for (const auto& line : lines) {
    json entry;
    entry["input"] = line.text;
    if (!line.graph) {
      all_pass = false;
      entry["error"] = line.error;
      entry["passed"] = false;
      if (!common.json)
        out << label(line) << ": error: " << line.error << "\n";
      results.push_back(std::move(entry));
      continue;
    }
    const Graph& g = *line.graph;
    SuiteOptions options;
    options.seed = common.seed;
    options.threads = common.threads;
    options.force_exhaustive_cuts = exhaustive_cuts;
    options.forbid = forbid ? &*forbid : nullptr;
    std::vector<CheckResult> checks;
    try {
      if (k_opt) {
        const auto girth_value = girth(g);
        if (!girth_value) throw error("acyclic graph has no girth");
        EgrParams params;
        params.v = g.order();
        params.k = *k_opt;
        params.g = *girth_value;
        params.lambda = *lambda_opt;
        params.validate();
        options.params = params;
      }
      checks = run_lemma_suite(g, options);
    } catch (const error& e) {
      all_pass = false;
      entry["error"] = e.what();
      entry["passed"] = false;
      if (!common.json)
        out << label(line) << ": error: " << e.what() << "\n";
      results.push_back(std::move(entry));
      continue;
    }
    bool line_pass = true;
    json check_array = json::array();
    for (const auto& check : checks) {
      line_pass = line_pass && check.passed;
      check_array.push_back(to_json(check));
    }
    entry["checks"] = std::move(check_array);
    entry["passed"] = line_pass;
    all_pass = all_pass && line_pass;
    if (!common.json) {
      out << label(line) << ": " << (line_pass ? "all checks pass" : "FAIL")
          << "\n";
      for (const auto& check : checks) {
        out << "  [" << (check.passed ? "PASS" : "FAIL") << "] "
            << check.check_name;
        if (!check.passed) {
          if (!check.note.empty()) out << " -- " << check.note;
          out << " (" << check.witnesses.size() << " witness"
              << (check.witnesses.size() == 1 ? "" : "es") << ")";
        }
        out << "\n";
      }
    }
    results.push_back(std::move(entry));
  }
  if (common.json)
    out << dump_report(make_report("lemmas", input_desc, std::move(results),
                                   all_pass ? "pass" : "fail",
                                   timer.elapsed_ms()));
  return all_pass ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------------------
// profiles

int cmd_profiles(int k, int g, std::int64_t lambda, const Common& common,
                 std::ostream& out) {
  Timer timer;
  const auto profiles = enumerate_layer_profiles(k, g, lambda);
  if (common.json) {
    json results;
    results["k"] = k;
    results["g"] = g;
    results["lambda"] = lambda;
    json array = json::array();
    for (const auto& profile : profiles) array.push_back(to_json(profile));
    results["profiles"] = std::move(array);
    const std::string desc = "k=" + std::to_string(k) +
                             " g=" + std::to_string(g) +
                             " lambda=" + std::to_string(lambda);
    out << dump_report(make_report("profiles", desc, std::move(results),
                                   "pass", timer.elapsed_ms()));
    return kExitOk;
  }
  out << profiles.size() << " layer profile"
      << (profiles.size() == 1 ? "" : "s") << " for k=" << k << " g=" << g
      << " lambda=" << lambda << "\n";
  for (const auto& profile : profiles) out << profile_text(profile) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// order

int cmd_order(int k, int g, const Common& common, std::ostream& out) {
  Timer timer;
  const std::int64_t value = upper_limit_order(k, g);
  if (common.json) {
    json results;
    results["k"] = k;
    results["g"] = g;
    results["value"] = value;
    const std::string desc = "k=" + std::to_string(k) + " g=" + std::to_string(g);
    out << dump_report(make_report("order", desc, std::move(results), "pass",
                                   timer.elapsed_ms()));
    return kExitOk;
  }
  out << value << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// local

int cmd_local(int k, int g, std::int64_t lambda, int profile_index, int depth,
              std::int64_t budget_nodes, const std::string& out_dir,
              const Common& common, std::ostream& out, std::ostream& err) {
  Timer timer;
  const bool even = g % 2 == 0;
  const int effective_depth = depth >= 0 ? depth : (even ? g / 2 : (g - 1) / 2);

  std::vector<std::optional<LayerProfile>> cases;
  std::vector<int> case_index;
  if (feasibility_prefilter(k, g, lambda)) {
    // arithmetically impossible parameters: one profile-free run records the
    // rejection as a verdict instead of a usage error
    cases.emplace_back(std::nullopt);
    case_index.push_back(-1);
  } else if (even) {
    const auto profiles = enumerate_layer_profiles(k, g, lambda);
    if (profiles.empty()) {
      if (!common.json)
        out << "no admissible layer profiles; parameters are infeasible\n";
      else
        out << dump_report(make_report(
            "local",
            "k=" + std::to_string(k) + " g=" + std::to_string(g) +
                " lambda=" + std::to_string(lambda),
            json::array(), "infeasible", timer.elapsed_ms()));
      return kExitFail;
    }
    if (profile_index >= 0) {
      if (profile_index >= static_cast<int>(profiles.size()))
        throw error("profile index " + std::to_string(profile_index) +
                    " out of range; " + std::to_string(profiles.size()) +
                    " profiles exist");
      cases.emplace_back(profiles[profile_index]);
      case_index.push_back(profile_index);
    } else {
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        cases.emplace_back(profiles[i]);
        case_index.push_back(static_cast<int>(i));
      }
    }
  } else {
    if (profile_index >= 0)
      throw error("layer profiles apply to even girth only");
    cases.emplace_back(std::nullopt);
    case_index.push_back(-1);
  }

  std::filesystem::create_directories(out_dir);

  LocalSearchOptions options;
  options.budget.max_nodes = budget_nodes;
  options.budget.max_seconds = common.timeout_secs;
  options.threads = common.threads;

  json results = json::array();
  bool any_feasible = false;
  bool any_unknown = false;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Timer case_timer;
    const CaseVerdict verdict =
        local_completion_search(k, g, lambda, cases[i], effective_depth,
                                options);
    any_feasible = any_feasible || verdict.status == CaseStatus::Feasible;
    any_unknown = any_unknown || verdict.status == CaseStatus::Unknown;

    std::string name = "local_k" + std::to_string(k) + "_g" +
                       std::to_string(g) + "_l" + std::to_string(lambda);
    std::string desc = "k=" + std::to_string(k) + " g=" + std::to_string(g) +
                       " lambda=" + std::to_string(lambda) +
                       " depth=" + std::to_string(effective_depth);
    if (case_index[i] >= 0) {
      name += "_p" + std::to_string(case_index[i]);
      desc += " profile=" + profile_text(*cases[i]);
    }
    const std::filesystem::path trace_path =
        std::filesystem::path(out_dir) / (name + ".trace.json");
    {
      std::ofstream trace_file(trace_path);
      if (!trace_file)
        throw error("cannot write trace file: " + trace_path.string());
      trace_file << dump_report(make_report("local", desc, to_json(verdict),
                                            to_string(verdict.status),
                                            case_timer.elapsed_ms()));
    }

    if (!common.json) {
      if (case_index[i] >= 0) out << "profile " << profile_text(*cases[i]) << " ";
      out << "depth " << effective_depth << ": " << to_string(verdict.status)
          << " -- " << verdict.nodes_expanded << " nodes, "
          << verdict.trace.size() << " trace steps, " << verdict.witness_count
          << " completion" << (verdict.witness_count == 1 ? "" : "s")
          << " (trace: " << trace_path.string() << ")\n";
      if (verdict.budget_exhausted)
        err << "warning: budget exhausted before a verdict\n";
    }
    json entry;
    entry["profile_index"] = case_index[i] >= 0 ? json(case_index[i]) : json(nullptr);
    entry["trace_file"] = trace_path.string();
    entry["verdict"] = to_json(verdict);
    results.push_back(std::move(entry));
  }

  const std::string overall = any_feasible  ? "feasible"
                              : any_unknown ? "unknown"
                                            : "infeasible";
  if (common.json) {
    const std::string desc = "k=" + std::to_string(k) +
                             " g=" + std::to_string(g) +
                             " lambda=" + std::to_string(lambda) +
                             " depth=" + std::to_string(effective_depth);
    out << dump_report(make_report("local", desc, std::move(results), overall,
                                   timer.elapsed_ms()));
  }
  if (any_feasible) return kExitOk;
  return any_unknown ? kExitBudget : kExitFail;
}

// ---------------------------------------------------------------------------
// search

int cmd_search(int k, int g, std::int64_t lambda, int max_v,
               const std::string& out_file, std::int64_t budget_nodes,
               const Common& common, std::ostream& out) {
  Timer timer;
  EgrSearchOptions options;
  options.budget.max_nodes = budget_nodes;
  options.budget.max_seconds = common.timeout_secs;
  options.threads = common.threads;
  const SearchOutcome outcome = search_egr(k, g, lambda, max_v, options);

  if (!out_file.empty()) {
    std::ofstream file(out_file);
    if (!file) throw error("cannot write output file: " + out_file);
    for (const auto& line : outcome.results) file << line << "\n";
  }

  const std::string verdict =
      outcome.stats.complete ? "found:" + std::to_string(outcome.results.size())
                             : "unknown";
  if (common.json) {
    const std::string desc = "k=" + std::to_string(k) +
                             " g=" + std::to_string(g) +
                             " lambda=" + std::to_string(lambda) +
                             " max_v=" + std::to_string(max_v);
    out << dump_report(make_report("search", desc, to_json(outcome), verdict,
                                   timer.elapsed_ms()));
  } else {
    if (out_file.empty())
      for (const auto& line : outcome.results) out << line << "\n";
    out << "found " << outcome.results.size() << " graph"
        << (outcome.results.size() == 1 ? "" : "s") << " up to order " << max_v
        << " (" << outcome.stats.nodes_expanded << " nodes expanded"
        << (outcome.stats.complete ? "" : ", budget exhausted") << ")\n";
  }
  return outcome.stats.complete ? kExitOk : kExitBudget;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"edge-girth-regular graph toolkit"};
  app.name("egrtool");
  app.require_subcommand(1);

  Common common;
  app.add_flag("--json", common.json, "emit a JSON report on stdout");
  app.add_option("--threads", common.threads, "worker thread count")
      ->check(CLI::Range(1, 256));
  app.add_option("--seed", common.seed,
                 "seed for sampled fallbacks (never affects verdict logic)");
  app.add_option("--timeout-secs", common.timeout_secs,
                 "wall-clock budget per search")
      ->check(CLI::PositiveNumber);

  // check
  auto* check_cmd =
      app.add_subcommand("check", "verify edge-girth-regularity");
  check_cmd->fallthrough();
  std::string check_input;
  check_cmd->add_option("input", check_input, "graph6 string or file")
      ->required();

  // lemmas
  auto* lemmas_cmd =
      app.add_subcommand("lemmas", "run the structural check suite");
  lemmas_cmd->fallthrough();
  std::string lemmas_input;
  lemmas_cmd->add_option("input", lemmas_input, "graph6 string or file")
      ->required();
  int lemmas_k = 0;
  std::int64_t lemmas_lambda = 0;
  auto* opt_k = lemmas_cmd->add_option(
      "--k", lemmas_k, "hypothesized degree (with --lambda)");
  auto* opt_lambda = lemmas_cmd->add_option(
      "--lambda", lemmas_lambda, "hypothesized per-edge cycle count (with --k)");
  opt_k->needs(opt_lambda);
  opt_lambda->needs(opt_k);
  std::string forbid_input;
  lemmas_cmd->add_option("--forbid", forbid_input,
                         "candidate forbidden subgraph (graph6 string or file)");
  bool exhaustive_cuts = false;
  lemmas_cmd->add_flag("--exhaustive-cuts", exhaustive_cuts,
                       "never sample edge cuts, enumerate them all");

  // profiles
  auto* profiles_cmd = app.add_subcommand(
      "profiles", "enumerate admissible outer-layer profiles (even girth)");
  profiles_cmd->fallthrough();
  int pk = 0, pg = 0;
  std::int64_t plambda = 0;
  profiles_cmd->add_option("k", pk, "degree")->required();
  profiles_cmd->add_option("g", pg, "girth")->required();
  profiles_cmd->add_option("lambda", plambda, "per-edge cycle count")
      ->required();

  // order
  auto* order_cmd = app.add_subcommand(
      "order", "order forced by the extremal cycle count (odd girth)");
  order_cmd->fallthrough();
  int ok = 0, og = 0;
  order_cmd->add_option("k", ok, "degree")->required();
  order_cmd->add_option("g", og, "girth")->required();

  // local
  auto* local_cmd = app.add_subcommand(
      "local", "local completion search around the forced tree");
  local_cmd->fallthrough();
  int lk = 0, lg = 0;
  std::int64_t llambda = 0;
  local_cmd->add_option("k", lk, "degree")->required();
  local_cmd->add_option("g", lg, "girth")->required();
  local_cmd->add_option("lambda", llambda, "per-edge cycle count")->required();
  int profile_index = -1;
  local_cmd->add_option("--profile", profile_index,
                        "run a single profile by index (default: all)");
  int depth = -1;
  local_cmd->add_option("--depth", depth,
                        "tree radius (default: the forced one)");
  std::int64_t local_budget = SearchBudget{}.max_nodes;
  local_cmd->add_option("--budget", local_budget, "node expansion budget");
  std::string out_dir = ".";
  local_cmd->add_option("--out-dir", out_dir, "directory for trace files");

  // search
  auto* search_cmd = app.add_subcommand(
      "search", "exhaustive isomorph-free search for small realizations");
  search_cmd->fallthrough();
  int sk = 0, sg = 0;
  std::int64_t slambda = 0;
  search_cmd->add_option("k", sk, "degree")->required();
  search_cmd->add_option("g", sg, "girth")->required();
  search_cmd->add_option("lambda", slambda, "per-edge cycle count")->required();
  int max_v = 0;
  search_cmd->add_option("--max-v", max_v, "largest order to examine")
      ->required()
      ->check(CLI::PositiveNumber);
  std::string search_out;
  search_cmd->add_option("--out", search_out, "write graph6 results here");
  std::int64_t search_budget = SearchBudget{}.max_nodes;
  search_cmd->add_option("--budget", search_budget, "node expansion budget");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("egrtool");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*check_cmd)
      return cmd_check(load_input(check_input), common, check_input, out);
    if (*lemmas_cmd) {
      std::optional<Graph> forbid;
      if (!forbid_input.empty()) {
        auto forbid_lines = load_input(forbid_input);
        if (forbid_lines.size() != 1 || !forbid_lines.front().graph)
          throw error("--forbid needs exactly one well-formed graph");
        forbid = std::move(*forbid_lines.front().graph);
      }
      std::optional<int> k_opt;
      std::optional<std::int64_t> lambda_opt;
      if (opt_k->count() > 0) {
        k_opt = lemmas_k;
        lambda_opt = lemmas_lambda;
      }
      return cmd_lemmas(load_input(lemmas_input), common, k_opt, lambda_opt,
                        forbid, exhaustive_cuts, lemmas_input, out);
    }
    if (*profiles_cmd) return cmd_profiles(pk, pg, plambda, common, out);
    if (*order_cmd) return cmd_order(ok, og, common, out);
    if (*local_cmd)
      return cmd_local(lk, lg, llambda, profile_index, depth, local_budget,
                       out_dir, common, out, err);
    if (*search_cmd)
      return cmd_search(sk, sg, slambda, max_v, search_out, search_budget,
                        common, out);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

}  // namespace egr::cli
