#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "cli.hpp"
#include "egr/graph.hpp"
#include "egr/json_io.hpp"
#include "reference_graphs.hpp"

using namespace egr;
using namespace egr::testing;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("cli check classifies literals and sets the exit code") {
  const auto pass = run_cli({"check", "C~"});
  CHECK(pass.code == 0);
  CHECK(pass.out.find("egr(4,3,3,2)") != std::string::npos);

  const auto fail = run_cli({"check", "DUW"});  // the plain 5-cycle
  CHECK(fail.code == 1);
  CHECK(fail.out.find("not edge-girth-regular") != std::string::npos);
  CHECK(fail.out.find("below 3") != std::string::npos);

  const auto petersen_g6 = write_graph6(petersen());
  const auto pet = run_cli({"check", petersen_g6});
  CHECK(pet.code == 0);
  CHECK(pet.out.find("egr(10,3,5,4)") != std::string::npos);
}

TEST_CASE("cli json reports parse and round-trip byte-identically") {
  const auto r = run_cli({"--json", "check", "C~"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("command") == "check");
  CHECK(doc.at("verdict") == "pass");
  REQUIRE(doc.at("results").is_array());
  const json& entry = doc.at("results").at(0);
  CHECK(entry.at("egr") == true);
  CHECK(entry.at("order") == 4);
  CHECK(entry.at("degree") == 3);
  CHECK(entry.at("girth") == 3);
  CHECK(entry.at("params").at("v") == 4);
  CHECK(dump_report(doc) == r.out);
}

TEST_CASE("cli check processes files line by line, surviving bad lines") {
  const fs::path dir = fresh_dir("egr_cli_check");
  const fs::path file = dir / "graphs.g6";
  {
    std::ofstream out(file);
    out << ">>graph6<<C~\n";
    out << "\n";
    out << "%%%\n";
    out << write_graph6(complete_bipartite(3, 3)) << "\n";
  }
  const auto r = run_cli({"check", file.string()});
  CHECK(r.code == 1);  // the malformed line counts as a failure
  CHECK(r.out.find("egr(4,3,3,2)") != std::string::npos);
  CHECK(r.out.find("egr(6,3,4,4)") != std::string::npos);
  CHECK(r.out.find("error") != std::string::npos);

  const auto j = run_cli({"--json", "check", file.string()});
  const json doc = json::parse(j.out);
  CHECK(doc.at("verdict") == "fail");
  REQUIRE(doc.at("results").size() == 3);  // the blank line is skipped
  CHECK(doc.at("results").at(1).contains("error"));
  CHECK(doc.at("results").at(2).at("egr") == true);

  // an inline malformed literal is a usage error, not a check failure
  const auto bad = run_cli({"check", "%%%"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("cli lemmas runs the suite and honors hypotheses") {
  const auto r = run_cli({"lemmas", write_graph6(petersen())});
  CHECK(r.code == 0);
  for (const char* name :
       {"vertex_cycle_count", "cycle_intersections", "path_containment_bounds",
        "p3_exact", "nonincident_edge_bound", "edge_cut_lemmas"}) {
    CAPTURE(name);
    CHECK(r.out.find(name) != std::string::npos);
  }
  CHECK(r.out.find("[FAIL]") == std::string::npos);

  // K44 under hypothesized lambda = 4 contains the forbidden K33
  const auto forbid = run_cli({"lemmas", write_graph6(complete_bipartite(4, 4)),
                               "--k", "4", "--lambda", "4", "--forbid",
                               write_graph6(complete_bipartite(3, 3))});
  CHECK(forbid.code == 1);
  CHECK(forbid.out.find("[FAIL] forbidden_subgraph") != std::string::npos);

  // --k requires --lambda
  CHECK(run_cli({"lemmas", "C~", "--k", "3"}).code == 2);

  // non-egr input without a hypothesis fails that entry
  const auto prism_run = run_cli({"lemmas", write_graph6(prism())});
  CHECK(prism_run.code == 1);
  CHECK(prism_run.out.find("error") != std::string::npos);
}

TEST_CASE("cli profiles and order print the case-analysis data") {
  const auto p = run_cli({"profiles", "3", "4", "2"});
  CHECK(p.code == 0);
  CHECK(p.out.find("2 layer profiles") != std::string::npos);
  CHECK(p.out.find("(3,0,1)") != std::string::npos);
  CHECK(p.out.find("(0,3,0)") != std::string::npos);

  const auto pj = run_cli({"--json", "profiles", "3", "8", "14"});
  const json doc = json::parse(pj.out);
  CHECK(doc.at("results").at("profiles").size() == 2);

  const auto o = run_cli({"order", "4", "5"});
  CHECK(o.code == 0);
  CHECK(o.out == "18\n");
  const auto oj = run_cli({"--json", "order", "3", "7"});
  CHECK(json::parse(oj.out).at("results").at("value") == 23);

  // infeasible or malformed parameters are input errors
  CHECK(run_cli({"profiles", "3", "4", "3"}).code == 2);
  CHECK(run_cli({"profiles", "3", "5", "4"}).code == 2);
  CHECK(run_cli({"order", "3", "6"}).code == 2);
}

TEST_CASE("cli local writes replayable trace files per profile") {
  const fs::path dir = fresh_dir("egr_cli_local");
  const auto r = run_cli({"local", "3", "4", "2", "--out-dir", dir.string()});
  CHECK(r.code == 0);  // one profile completes (the cube)
  CHECK(r.out.find("Infeasible") != std::string::npos);
  CHECK(r.out.find("Feasible") != std::string::npos);

  const fs::path p0 = dir / "local_k3_g4_l2_p0.trace.json";
  const fs::path p1 = dir / "local_k3_g4_l2_p1.trace.json";
  REQUIRE(fs::exists(p0));
  REQUIRE(fs::exists(p1));

  int feasible = 0, infeasible = 0;
  for (const fs::path& path : {p0, p1}) {
    const std::string text = slurp(path);
    const json doc = json::parse(text);
    CHECK(doc.at("command") == "local");
    CHECK(dump_report(doc) == text);
    const CaseVerdict verdict = case_verdict_from_json(doc.at("results"));
    feasible += verdict.status == CaseStatus::Feasible;
    infeasible += verdict.status == CaseStatus::Infeasible;
    for (const auto& step : verdict.trace)
      CHECK(replay_trace_step(verdict.params, verdict.profile, step));
    if (verdict.status == CaseStatus::Feasible) {
      REQUIRE(!verdict.witnesses.empty());
      CHECK(verdict.witnesses.front() ==
            canonical_form(hypercube()).canonical_string);
    }
  }
  CHECK(feasible == 1);
  CHECK(infeasible == 1);
}

TEST_CASE("cli local handles rejected parameters and tight budgets") {
  const fs::path dir = fresh_dir("egr_cli_local_edge");

  // arithmetically impossible parameters still produce a verdict and a trace
  const auto rejected =
      run_cli({"local", "3", "4", "3", "--out-dir", dir.string()});
  CHECK(rejected.code == 1);
  const fs::path trace = dir / "local_k3_g4_l3.trace.json";
  REQUIRE(fs::exists(trace));
  const CaseVerdict verdict =
      case_verdict_from_json(json::parse(slurp(trace)).at("results"));
  CHECK(verdict.status == CaseStatus::Infeasible);
  REQUIRE(!verdict.trace.empty());
  CHECK(verdict.trace.front().rule == "prefilter_reject");

  // a starved budget exits with the budget code
  const auto starved = run_cli({"local", "3", "6", "8", "--budget", "1",
                                "--out-dir", dir.string()});
  CHECK(starved.code == 3);
  CHECK(starved.out.find("Unknown") != std::string::npos);

  // profile index out of range
  CHECK(run_cli({"local", "3", "4", "2", "--profile", "5", "--out-dir",
                 dir.string()})
            .code == 2);
  // profiles apply to even girth only
  CHECK(run_cli({"local", "3", "5", "4", "--profile", "0", "--out-dir",
                 dir.string()})
            .code == 2);
}

TEST_CASE("cli search lists graphs on stdout or to a file") {
  const std::string k33 =
      canonical_form(complete_bipartite(3, 3)).canonical_string;

  const auto r = run_cli({"search", "3", "4", "4", "--max-v", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find(k33 + "\n") != std::string::npos);
  CHECK(r.out.find("found 1 graph") != std::string::npos);

  const fs::path dir = fresh_dir("egr_cli_search");
  const fs::path out_file = dir / "results.g6";
  const auto f = run_cli({"search", "3", "4", "4", "--max-v", "7", "--out",
                          out_file.string()});
  CHECK(f.code == 0);
  CHECK(slurp(out_file) == k33 + "\n");

  const auto j = run_cli({"--json", "search", "3", "3", "2", "--max-v", "4"});
  const json doc = json::parse(j.out);
  CHECK(doc.at("verdict") == "found:1");
  CHECK(doc.at("results").at("results").size() == 1);

  // starved budget: incomplete, budget exit code
  const auto starved =
      run_cli({"search", "3", "6", "8", "--max-v", "16", "--budget", "5"});
  CHECK(starved.code == 3);
  CHECK(starved.out.find("budget exhausted") != std::string::npos);

  // infeasible parameters are an input error
  CHECK(run_cli({"search", "3", "5", "3", "--max-v", "10"}).code == 2);
}

TEST_CASE("cli usage errors and help") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"profiles", "3"}).code == 2);
  CHECK(run_cli({"search", "3", "4", "4"}).code == 2);  // missing --max-v
  CHECK(run_cli({"--threads", "0", "check", "C~"}).code == 2);

  const auto usage = run_cli({"profiles", "3"});
  CHECK(usage.err.find("usage error") != std::string::npos);

  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  for (const char* name : {"check", "lemmas", "profiles", "order", "local",
                           "search"}) {
    CAPTURE(name);
    CHECK(help.out.find(name) != std::string::npos);
  }
}
