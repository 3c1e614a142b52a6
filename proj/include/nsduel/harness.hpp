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

#ifndef NSDUEL_HARNESS_HPP_
#define NSDUEL_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsduel/anaconda.hpp"
#include "nsduel/measures.hpp"
#include "nsduel/policy.hpp"
#include "nsduel/preferences.hpp"

namespace nsduel {

struct PolicySpec {
  enum class Kind { kAnaconda, kUniform, kOracleRestart, kFixedBudgetRestart };
  Kind kind = Kind::kAnaconda;
  double elim_constant = 1.0;
  int restarts = 0;  // fixed_budget_restart only

  std::string Label() const;
};

// Builds the policy for one run. The oracle baseline reads the switch rounds
// from the environment.
std::unique_ptr<Policy> MakePolicy(const PolicySpec& spec,
                                   const PreferenceSequence& env,
                                   std::uint64_t seed);

// (gap(w, a) + gap(w, b)) / 2 for the winner w of p.
double RegretIncrement(const PreferenceMatrix& p, Arm a, Arm b);

struct RunRecord {
  std::uint64_t seed = 0;
  std::string policy;
  std::vector<double> regret;
  std::vector<double> cumulative;
  std::vector<int> episode;
  std::vector<int> frame_depth;
  std::vector<DuelEvent> events;
  std::vector<Round> episode_starts;
  // Anaconda only.
  std::optional<PolicyTrace> trace;
  std::optional<MeasureReport> measures;
  double wall_seconds = 0.0;

  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

// Runs `spec` on `env` for the full horizon. Outcomes are drawn from the
// stream "env" and pairs from the stream "pairs" derived from `seed`, so a
// policy built directly with the same seed reproduces the run.
RunRecord RunSingle(const PreferenceSequence& env, const PolicySpec& spec,
                    std::uint64_t seed, bool with_measures = false);

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void ParallelFor(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

struct Summary {
  double mean = 0.0;
  double stderr_mean = 0.0;
};
// Sample mean and standard error; needs at least two values.
Summary Summarize(const std::vector<double>& values);

// Least-squares slope of ln(ys) against ln(xs).
double LogLogSlope(const std::vector<double>& xs, const std::vector<double>& ys);

struct SweepSpec {
  int k = 5;
  double gap = 0.3;
  Round horizon = 20000;
  std::vector<int> switch_counts{1, 2, 4, 8, 16};
  std::vector<PolicySpec> policies;
  int seeds = 2;
  std::uint64_t base_seed = 0;
  int jobs = 1;
};

struct SweepCell {
  std::string policy;
  int switches;
  Round horizon;
  std::vector<double> totals;  // DR(T) per seed
  Summary summary;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  // Per policy: slope of ln(mean DR) against ln(S + 1).
  std::map<std::string, double> slopes;
};

// Seed i of every cell is base_seed + i.
SweepResult RunSweep(const SweepSpec& spec);

// Slope of ln(mean DR) against ln(switches + 1) over the given cells.
double ScalingFit(const std::vector<SweepCell>& cells);

struct ConcentrationResult {
  int trials = 0;
  int violations = 0;
  double frequency() const {
    return trials == 0 ? 0.0 : static_cast<double>(violations) / trials;
  }
};

// Whether one simulated run of uniform play over all arms has some ordered
// pair and dyadic interval [s1, s2] with
//   |sum (est_t - gap_t)| > c1 ln(T) (K sqrt(s2 - s1) + K^2).
bool ConcentrationViolated(const PreferenceMatrix& p, Round horizon, double c1,
                           std::uint64_t seed);

// Trial i uses seed DeriveSeed(base_seed + i, "concentration").
ConcentrationResult ConcentrationSuite(const PreferenceMatrix& p, Round horizon,
                                       int trials, double c1,
                                       std::uint64_t base_seed, int jobs = 1);

}  // namespace nsduel

#endif  // NSDUEL_HARNESS_HPP_
