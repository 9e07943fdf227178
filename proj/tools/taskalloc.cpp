// Copyright 2026 The taskalloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// taskalloc command-line tool.
//
// Exit codes: 0 converged or verified, 1 budget exhausted or not verified,
// 2 invalid input or assumption violation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "taskalloc/harness/csv.hpp"
#include "taskalloc/harness/run.hpp"
#include "taskalloc/harness/scenario.hpp"

namespace {

using namespace taskalloc;
using namespace taskalloc::harness;

struct CommonArgs {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_rounds;
  std::optional<double> tolerance;
};

// "builtin:<name>" selects a builtin scenario; anything else is a path.
Scenario load(const CommonArgs& a) {
  if (a.scenario.empty()) throw ScenarioError("--scenario is required");
  constexpr std::string_view kPrefix = "builtin:";
  Scenario s = a.scenario.rfind(kPrefix, 0) == 0 ? builtin_scenario(a.scenario.substr(kPrefix.size()))
                                                 : load_scenario(a.scenario);
  apply_overrides(s, {a.seed, a.max_rounds, a.tolerance});
  return s;
}

std::optional<std::filesystem::path> out_dir(const CommonArgs& a) {
  if (a.out.empty()) return std::nullopt;
  return std::filesystem::path(a.out);
}

void emit(const json& j, const CommonArgs& a, const char* file) {
  std::cout << j.dump(2) << '\n';
  if (auto dir = out_dir(a)) {
    std::filesystem::create_directories(*dir);
    std::ofstream(*dir / file) << j.dump(2) << '\n';
  }
}

void add_common(CLI::App* cmd, CommonArgs& a, bool scenario_flag = true) {
  if (scenario_flag) {
    cmd->add_option("--scenario", a.scenario, "Scenario JSON path, or builtin:<name>");
  }
  cmd->add_option("--out", a.out, "Output directory");
  cmd->add_option("--seed", a.seed, "Replace every seed in the scenario");
  cmd->add_option("--max-rounds", a.max_rounds, "Round budget");
  cmd->add_option("--tolerance", a.tolerance, "Weight-game equilibrium tolerance");
}

int cmd_run(const CommonArgs& a) {
  const Scenario s = load(a);
  const RunReport r = run_scenario(s, out_dir(a));
  std::cout << to_json(r).dump(2) << '\n';
  return r.exit_code();
}

int cmd_verify_ne(const CommonArgs& a, const std::string& weights_path) {
  const Scenario s = load(a);
  const RewardMatrix f = resolve_rewards(s);
  const Matrix w = read_weights_file(weights_path);
  const NeVerdicts v = verify_ne(w, f, s.tolerance, s.support_tolerance);
  const json j = {{"allocation", allocation_json(v.allocation)},
                  {"partition_game", ne_json(v.partition_game)},
                  {"weight_game", ne_json(v.weight_game)},
                  {"tolerance", s.tolerance}};
  emit(j, a, "verify_ne.json");
  return v.partition_game.is_ne && v.weight_game.is_ne ? kExitOk : kExitBudget;
}

int cmd_enumerate(const CommonArgs& a) {
  const Scenario s = load(a);
  const RewardMatrix f = resolve_rewards(s);
  const OptimalSet opt = enumerate_optimal_partitions(f);
  json parts = json::array();
  for (const auto& p : opt.partitions) parts.push_back(p.profile().to_string());
  emit({{"optimal_value", opt.optimal_value},
        {"partitions", parts},
        {"all_in_ne", verify_inclusion(f)},
        {"unique_ne", static_cast<bool>(unique_ne(f))}},
       a, "enumerate.json");
  return kExitOk;
}

int cmd_bound(const CommonArgs& a) {
  const Scenario s = load(a);
  const RewardMatrix f = resolve_rewards(s);
  const StepSizeMatrix gamma = resolve_step_sizes(s, f);
  emit({{"dominance_margin", dominance_margin(f)},
        {"gamma_min", gamma.min()},
        {"finite_time_bound", finite_time_bound(f, gamma)}},
       a, "bound.json");
  return kExitOk;
}

int cmd_derive_params(const CommonArgs& a) {
  const Scenario s = load(a);
  const RewardMatrix f = resolve_rewards(s);
  const DirectedGraph g = resolve_graph(s, f.agents());
  const std::uint64_t d = resolve_diameter_surrogate(s, g);
  const ConstantParamDerivation p = derive_constant_params(f, d, s.epsilon, s.nu);
  emit({{"diameter_surrogate", d},
        {"epsilon", s.epsilon},
        {"nu", s.nu},
        {"alpha", p.alpha.to_rows()},
        {"alpha_min", p.alpha_min},
        {"spread", p.spread},
        {"half_gap", p.half_gap},
        {"mu", p.mu},
        {"period_lower", p.period_lower},
        {"period", p.params.period}},
       a, "derive_params.json");
  return kExitOk;
}

int cmd_replicate(CommonArgs a, const std::string& name, bool print_scenario) {
  if (print_scenario) {
    std::cout << builtin_scenario_json(name).dump(2) << '\n';
    return kExitOk;
  }
  a.scenario = "builtin:" + name;
  const Scenario s = load(a);
  const RunReport r = run_scenario(s, out_dir(a));
  bool all = true;
  for (const auto& e : builtin_expectations(name, r)) {
    std::cout << (e.met ? "PASS " : "FAIL ") << e.description << '\n';
    all = all && e.met;
  }
  std::cout << to_json(r).dump(2) << '\n';
  return all && r.converged ? kExitOk : kExitBudget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task allocation games and their best-response dynamics"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string weights_path;
  std::string builtin;
  bool print_scenario = false;

  auto* run = app.add_subcommand("run", "Run a scenario; writes trajectory.csv and report.json to --out");
  add_common(run, args);
  auto* verify = app.add_subcommand("verify-ne", "Check a weight matrix against both equilibrium tests");
  add_common(verify, args);
  verify->add_option("--weights", weights_path, "Trajectory CSV or plain matrix CSV")->required();
  auto* enumerate = app.add_subcommand("enumerate", "List every optimal partition");
  add_common(enumerate, args);
  auto* bound = app.add_subcommand("bound", "Finite-time convergence bound for PBRAG");
  add_common(bound, args);
  auto* derive = app.add_subcommand("derive-params", "Constant step sizes and period for d-PBRAG");
  add_common(derive, args);
  auto* replicate = app.add_subcommand("replicate", "Run a builtin scenario and check its pinned outcome");
  add_common(replicate, args, false);
  replicate->add_option("name", builtin, "example1, table1-pbrag, single-task-eps09, single-task-eps03, table1-dpbrag")
      ->required();
  replicate->add_flag("--print-scenario", print_scenario, "Print the scenario JSON and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*run) return cmd_run(args);
    if (*verify) return cmd_verify_ne(args, weights_path);
    if (*enumerate) return cmd_enumerate(args);
    if (*bound) return cmd_bound(args);
    if (*derive) return cmd_derive_params(args);
    if (*replicate) return cmd_replicate(args, builtin, print_scenario);
  } catch (const std::invalid_argument& e) {  // includes ScenarioError
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    std::cerr << "assumption violated: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitInvalid;
}
