// Copyright 2026 The nsduel Authors.
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

// Command-line driver: run, sweep, measures, concentration, validate.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nsduel/experiment.hpp"

namespace {

using nsduel::ExperimentConfig;

constexpr int kExitConfig = 1;
constexpr int kExitEnvironment = 2;
constexpr int kExitOrdering = 3;

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<int> seeds;
  std::optional<std::uint64_t> base_seed;
  std::optional<int> jobs;
  std::optional<std::int64_t> horizon;
  std::optional<double> elim_constant;
};

void AddCommon(CLI::App* cmd, Overrides& o, bool run_options) {
  cmd->add_option("config", o.config_path, "Experiment config (JSON)")->required();
  cmd->add_option("--out", o.out,
                  "Output directory; beats ANACONDA_OUT and the config's output_dir");
  cmd->add_option("--horizon", o.horizon, "Override the horizon T");
  if (!run_options) return;
  cmd->add_option("--seeds", o.seeds, "Override the seed count");
  cmd->add_option("--base-seed", o.base_seed, "Override the base seed; seed i is base + i");
  cmd->add_option("--jobs", o.jobs, "Maximum number of worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--C", o.elim_constant, "Override the policy's elimination constant")
      ->check(CLI::PositiveNumber);
}

ExperimentConfig Load(const Overrides& o) {
  ExperimentConfig c = nsduel::LoadConfig(o.config_path);
  if (const char* env = std::getenv("ANACONDA_OUT"); env != nullptr && *env != '\0') {
    c.output_dir = env;
  }
  if (o.out) c.output_dir = *o.out;
  if (o.seeds) c.seed_count = *o.seeds;
  if (o.base_seed) c.base_seed = *o.base_seed;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.horizon) c.horizon = *o.horizon;
  if (o.elim_constant) c.policy.elim_constant = *o.elim_constant;
  if (c.horizon < 2) throw nsduel::ConfigError("horizon must be >= 2");
  if (c.seed_count < 1) throw nsduel::ConfigError("seed count must be >= 1");
  return c;
}

std::string Num(double x) { return nsduel::FormatDouble(x); }

int CmdRun(const Overrides& o) {
  const ExperimentConfig c = Load(o);
  const auto r = nsduel::RunExperiment(c, c.output_dir);
  std::cout << "run policy=" << c.policy.Label() << " T=" << c.horizon
            << " seeds=" << r.totals.size();
  if (r.summary) {
    std::cout << " mean_dr=" << Num(r.summary->mean) << " stderr=" << Num(r.summary->stderr_mean);
  } else {
    std::cout << " dr=" << Num(r.totals.front());
  }
  std::cout << " out=" << c.output_dir << "\n";
  return 0;
}

int CmdSweep(const Overrides& o) {
  const ExperimentConfig c = Load(o);
  const auto r = nsduel::SweepExperiment(c, c.output_dir);
  std::cout << "sweep T=" << c.horizon << " seeds=" << c.seed_count << " cells=" << r.cells.size();
  for (const auto& [policy, slope] : r.slopes) std::cout << " slope[" << policy << "]=" << Num(slope);
  std::cout << " out=" << c.output_dir << "\n";
  return 0;
}

int CmdConcentration(const Overrides& o) {
  const ExperimentConfig c = Load(o);
  const auto r = nsduel::ConcentrationExperiment(c, c.output_dir);
  std::cout << "concentration T=" << c.horizon << " trials=" << r.trials
            << " violations=" << r.violations << " frequency=" << Num(r.frequency())
            << " out=" << c.output_dir << "\n";
  return 0;
}

int CmdMeasures(const Overrides& o) {
  const ExperimentConfig c = Load(o);
  const auto r = nsduel::MeasuresExperiment(c, c.output_dir);
  std::cout << nsduel::MeasureReportJson(r);
  if (!r.OrderingHolds()) {
    std::cerr << "error: measure ordering violated\n";
    return kExitOrdering;
  }
  return 0;
}

int CmdValidate(const Overrides& o) {
  const ExperimentConfig c = Load(o);
  std::cout << "valid schema_version=" << c.schema_version << " T=" << c.horizon;
  if (c.env) {
    const auto env = nsduel::BuildEnv(c);
    std::cout << " k=" << env.k() << " cw_switches=" << env.WinnerSwitchRounds().size();
  }
  if (c.sweep) {
    for (int s : c.sweep->switch_counts) {
      (void)nsduel::PreferenceSequence::ScriptedSwitches(c.sweep->k, c.sweep->gap, s, c.horizon);
    }
    std::cout << " sweep_cells=" << c.sweep->switch_counts.size();
  }
  if (c.concentration && c.concentration->matrix) {
    (void)nsduel::CondorcetWinner(nsduel::PreferenceMatrix::FromRows(*c.concentration->matrix));
  }
  std::cout << " hash=" << nsduel::ConfigHash(c) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-stationary dueling bandit experiments"};
  app.require_subcommand(1);
  app.set_help_flag();
  app.set_help_all_flag("-h,--help", "Print help for every subcommand and exit");
  app.footer(
      "Environment:\n  ANACONDA_OUT  output directory (the --out flag takes precedence)\n"
      "Exit codes: 0 ok, 1 invalid config, 2 invalid environment, 3 measure ordering "
      "violated");

  Overrides o;
  CLI::App* run = app.add_subcommand("run", "Run the configured policy once per seed");
  CLI::App* sweep = app.add_subcommand("sweep", "Regret sweep over scripted switch counts");
  CLI::App* measures = app.add_subcommand("measures", "Non-stationarity measures of the env");
  CLI::App* conc = app.add_subcommand("concentration", "Estimator concentration suite");
  CLI::App* validate = app.add_subcommand("validate", "Check a config and its environment");
  AddCommon(run, o, true);
  AddCommon(sweep, o, true);
  AddCommon(measures, o, false);
  AddCommon(conc, o, true);
  AddCommon(validate, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) return CmdRun(o);
    if (sweep->parsed()) return CmdSweep(o);
    if (measures->parsed()) return CmdMeasures(o);
    if (conc->parsed()) return CmdConcentration(o);
    return CmdValidate(o);
  } catch (const nsduel::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nsduel::NoCondorcetWinner& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const nsduel::InvalidPreferences& e) {
    std::cerr << "error: invalid environment: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
