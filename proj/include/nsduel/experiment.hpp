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

#ifndef NSDUEL_EXPERIMENT_HPP_
#define NSDUEL_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsduel/harness.hpp"
#include "nsduel/measures.hpp"
#include "nsduel/preferences.hpp"

namespace nsduel {

inline constexpr int kSchemaVersion = 1;

// Malformed or schema-violating configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using MatrixRows = std::vector<std::vector<double>>;

// Environment description as read from a config. Matrices stay raw until
// BuildEnv so that malformed JSON and invalid preferences can be told apart.
struct EnvSpec {
  enum class Type { kExplicit, kPiecewiseConstant, kUtilityDrift, kScriptedSwitches };
  Type type = Type::kScriptedSwitches;
  // explicit: one per round (cycled when `repeat`); piecewise_constant: one
  // per segment, starting at `starts`.
  std::vector<MatrixRows> matrices;
  std::vector<Round> starts;
  bool repeat = false;
  // utility_drift
  Link link;
  std::vector<UtilityKeyframe> keyframes;
  // scripted_switches
  int k = 0;
  double gap = 0.0;
  int switches = 0;
};

struct SweepOptions {
  int k = 5;
  double gap = 0.3;
  std::vector<int> switch_counts{1, 2, 4, 8, 16};
  std::vector<PolicySpec> policies;
};

struct ConcentrationOptions {
  int k = 4;
  // Used when no matrix is given: arm 1 beats every other arm by `gap`.
  double gap = 0.2;
  std::optional<MatrixRows> matrix;
  int trials = 200;
  double c1 = 6.0;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  Round horizon = 0;
  std::optional<EnvSpec> env;
  PolicySpec policy;
  int seed_count = 1;
  std::uint64_t base_seed = 0;
  std::string output_dir = "out";
  int jobs = 1;
  std::optional<SweepOptions> sweep;
  std::optional<ConcentrationOptions> concentration;
};

// Throws ConfigError on malformed JSON, unknown keys, wrong types or values
// outside their domain.
ExperimentConfig ParseConfig(const std::string& text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Canonical JSON of every field that affects results (output_dir and jobs are
// left out). Keys are sorted, so equal configs give equal strings.
std::string CanonicalConfig(const ExperimentConfig& config);
// FNV-1a of CanonicalConfig, as 16 hex digits.
std::string ConfigHash(const ExperimentConfig& config);

// Throws InvalidPreferences or NoCondorcetWinner for an invalid environment
// and ConfigError when the config has no env section.
PreferenceSequence BuildEnv(const EnvSpec& env, Round horizon);
PreferenceSequence BuildEnv(const ExperimentConfig& config);

// Shortest decimal that reads back to the same double.
std::string FormatDouble(double x);

// Per-run CSV: round,regret,cum_regret,episode,frame_depth.
void WriteRunCsv(const std::filesystem::path& path, const RunRecord& record);
// Trace CSV: t,a_t,b_t,o_t,active_size,frame_depth,episode with 1-based arms.
void WriteTraceCsv(const std::filesystem::path& path, const RunRecord& record);
std::vector<DuelEvent> ReadTraceCsv(const std::filesystem::path& path);
// Episodes, eliminations with their witnesses and the replay tree.
std::string TraceSidecarJson(const PolicyTrace& trace);
std::string MeasureReportJson(const MeasureReport& report);

struct RunSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<double> totals;
  std::optional<Summary> summary;  // with at least two seeds
};

// The commands behind the CLI. Each writes its artifacts and a manifest.json
// into `out`, which is created if missing. Seed i is base_seed + i.
RunSummary RunExperiment(const ExperimentConfig& config, const std::filesystem::path& out);
SweepResult SweepExperiment(const ExperimentConfig& config,
                            const std::filesystem::path& out);
ConcentrationResult ConcentrationExperiment(const ExperimentConfig& config,
                                            const std::filesystem::path& out);
MeasureReport MeasuresExperiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out);

}  // namespace nsduel

#endif  // NSDUEL_EXPERIMENT_HPP_
