// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line surface: instance generation, experiment runs with certified
// report rows, property-suite verification, and graph lifting.
//
// Exit codes: 0 ok, 1 infeasible output detected, 2 invariant violation,
// 3 capacity or spec error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maso/generators.hpp"
#include "maso/json_io.hpp"
#include "maso/lifting.hpp"
#include "maso/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitSpec = 3;

struct SeedRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

SeedRange parse_seed_range(const std::string& text) {
  auto sep = text.find("..");
  SeedRange range;
  try {
    if (sep == std::string::npos) {
      range.lo = range.hi = std::stoull(text);
    } else {
      range.lo = std::stoull(text.substr(0, sep));
      range.hi = std::stoull(text.substr(sep + 2));
    }
  } catch (const std::exception&) {
    throw maso::PreconditionError("bad --seeds value, expected A or A..B: " + text);
  }
  if (range.hi < range.lo)
    throw maso::PreconditionError("bad --seeds range, end before start: " + text);
  return range;
}

// Generated objectives must pass the properties they claim before the file
// is considered valid output.
void check_claimed_properties(const maso::MasoInstance& inst) {
  for (int i = 0; i < inst.k; ++i) {
    const maso::ValueOracle& f = inst.objectives[i];
    maso::Verdict v = inst.n() <= 10 ? maso::check_submodular(f)
                                     : maso::check_submodular_sampled(f, 17, 500);
    if (f.claims_submodular() && !v.ok)
      throw maso::InvariantError("generated objective " + std::to_string(i + 1) +
                                 " fails its submodularity claim: " + v.detail);
    if (f.claims_monotone()) {
      maso::Verdict m = inst.n() <= 10 ? maso::check_monotone(f)
                                       : maso::check_monotone_sampled(f, 18, 500);
      if (!m.ok)
        throw maso::InvariantError("generated objective " + std::to_string(i + 1) +
                                   " fails its monotonicity claim: " + m.detail);
    }
  }
}

int cmd_generate(const std::string& kind, maso::GeneratorParams params,
                 std::uint64_t seed, const std::string& out) {
  maso::Json doc = maso::generate_instance(kind, params, seed);
  maso::ParsedInstance parsed = maso::instance_from_json(doc);
  check_claimed_properties(parsed.instance);
  std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    maso::write_text_file(out, text);
    std::cout << "wrote " << out << " (" << parsed.id << ")\n";
  }
  return kExitOk;
}

// --caps-override tightens or disables the per-row certificate budget; it
// never loosens the compiled caps. "none" disables certificates outright.
std::uint64_t parse_caps_override(const std::string& text) {
  if (text.empty()) return 0;
  if (text == "none" || text == "off") return 1;
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw maso::PreconditionError("bad --caps-override value: " + text);
  }
}

int cmd_run(const std::string& instance_path,
            const std::vector<std::string>& algos, const std::string& seeds,
            const std::string& out, const std::string& format, bool timings,
            const std::string& caps_override) {
  maso::ParsedInstance parsed = maso::load_instance(instance_path);
  SeedRange range = parse_seed_range(seeds);
  std::vector<maso::ReportRow> rows =
      maso::run_experiment(parsed, algos, range.lo, range.hi, timings,
                           parse_caps_override(caps_override));

  bool all_feasible = true;
  for (const auto& row : rows) all_feasible = all_feasible && row.feasible;

  const bool want_csv = format.empty() || format == "csv";
  const bool want_json = format.empty() || format == "json";
  if (out.empty()) {
    if (want_csv) std::cout << maso::report_to_csv(rows);
    if (want_json) std::cout << maso::report_to_json(parsed.id, rows).dump(2) << "\n";
  } else {
    if (want_csv) maso::write_text_file(out + ".csv", maso::report_to_csv(rows));
    if (want_json)
      maso::write_text_file(out + ".json",
                            maso::report_to_json(parsed.id, rows).dump(2) + "\n");
    std::cout << rows.size() << " rows, "
              << (all_feasible ? "all feasible" : "INFEASIBLE ROWS PRESENT")
              << ", report at " << out
              << (want_csv && want_json ? ".{csv,json}" : (want_csv ? ".csv" : ".json"))
              << "\n";
  }
  return all_feasible ? kExitOk : kExitInfeasible;
}

int cmd_verify(const std::vector<std::string>& suites, bool caps_override) {
  bool all_ok = true;
  for (const std::string& name : suites) {
    if (caps_override && name == "acceptance")
      throw maso::PreconditionError("--caps-override is refused for acceptance runs");
    maso::SuiteResult result = maso::run_suite(name);
    std::cout << maso::format_suite(result);
    all_ok = all_ok && result.ok();
  }
  return all_ok ? kExitOk : kExitInvariant;
}

int cmd_lift_graph(const std::string& graph_path, int k, const std::string& out) {
  std::ifstream in(graph_path);
  if (!in) throw maso::PreconditionError("cannot open graph file: " + graph_path);
  maso::Json doc = maso::Json::parse(in, nullptr, true, true);
  maso::Graph g = maso::graph_from_json(doc.contains("graph") ? doc["graph"] : doc);
  maso::LiftedGraph lifted = maso::lift_graph(g, k);
  maso::Json result;
  result["graph"] = maso::graph_to_json(lifted.multigraph);
  result["copies"] = lifted.copies;
  result["copy_of"] = lifted.copy_of;
  result["agent_of"] = lifted.agent_of;
  std::string text = result.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    maso::write_text_file(out, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent submodular optimization toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "emit a seeded instance as JSON");
  std::string gen_kind;
  maso::GeneratorParams gen_params;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "instance kind")
      ->required()
      ->check(CLI::IsMember(maso::generator_kinds()));
  gen->add_option("--n", gen_params.n, "ground set size (0 = kind default)");
  gen->add_option("--k", gen_params.k, "number of agents");
  gen->add_option("--budget", gen_params.budget, "cardinality budget where used");
  gen->add_option("--items", gen_params.items, "coverage universe size (0 = default)");
  gen->add_option("--clients", gen_params.clients, "facility client count (0 = default)");
  gen->add_flag("--complete", gen_params.complete, "use a complete graph where applicable");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path (stdout when absent)");

  // run
  auto* run = app.add_subcommand("run", "run algorithms over seeds, emit a report");
  std::string run_instance, run_seeds = "0..0", run_out, run_format;
  std::vector<std::string> run_algos;
  bool run_timings = false;
  std::string run_caps_override;
  run->add_option("--instance", run_instance, "instance JSON path")->required();
  run->add_option("--algo", run_algos, "algorithm name (repeatable)")
      ->check(CLI::IsMember(maso::known_algorithms()));
  run->add_option("--seeds", run_seeds, "seed or inclusive range A..B");
  run->add_option("--out", run_out, "report path prefix (stdout when absent)");
  run->add_option("--format", run_format, "csv or json (both when absent)")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--timings", run_timings,
                "record wall-clock runtime per row (breaks byte-identical reruns)");
  run->add_option("--caps-override", run_caps_override,
                  "acknowledge oversized certificates; refused for acceptance runs");

  // verify
  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::vector<std::string> verify_suites;
  bool verify_caps_override = false;
  auto suite_names = maso::verify_suite_names();
  std::vector<std::string> suite_choices = suite_names;
  suite_choices.push_back("all");
  verify->add_option("--suite", verify_suites, "suite name (repeatable), or all")
      ->required()
      ->check(CLI::IsMember(suite_choices));
  verify->add_flag("--caps-override", verify_caps_override,
                   "refused for acceptance runs");

  // lift-graph
  auto* lift = app.add_subcommand("lift-graph", "emit the k-agent lifted multigraph");
  std::string lift_path, lift_out;
  int lift_k = 2;
  lift->add_option("--graph", lift_path, "graph JSON path")->required();
  lift->add_option("--k", lift_k, "number of agents")->check(CLI::PositiveNumber);
  lift->add_option("--out", lift_out, "output path (stdout when absent)");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_generate(gen_kind, gen_params, gen_seed, gen_out);
    if (run->parsed())
      return cmd_run(run_instance, run_algos, run_seeds, run_out, run_format,
                     run_timings, run_caps_override);
    if (verify->parsed()) {
      std::vector<std::string> suites;
      for (const auto& name : verify_suites) {
        if (name == "all")
          suites.insert(suites.end(), suite_names.begin(), suite_names.end());
        else
          suites.push_back(name);
      }
      return cmd_verify(suites, verify_caps_override);
    }
    if (lift->parsed()) return cmd_lift_graph(lift_path, lift_k, lift_out);
    return kExitSpec;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitSpec;
  } catch (const maso::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const maso::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const maso::CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitSpec;
  } catch (const maso::PreconditionError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  }
}
