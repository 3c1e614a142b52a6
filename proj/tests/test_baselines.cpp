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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nsduel/baselines.hpp"
#include "nsduel/harness.hpp"

using namespace nsduel;

namespace {

const PreferenceMatrix kOneWins = PreferenceMatrix::FromRows({{0.5, 1.0}, {0.0, 0.5}});
const PreferenceMatrix kTwoWins = PreferenceMatrix::FromRows({{0.5, 0.0}, {1.0, 0.5}});

double MeanTotal(const PreferenceSequence& env, const PolicySpec& spec, int seeds) {
  double s = 0.0;
  for (int i = 0; i < seeds; ++i) s += RunSingle(env, spec, 500 + i).total();
  return s / seeds;
}

PolicySpec Spec(PolicySpec::Kind kind, double c = 1.0, int restarts = 0) {
  PolicySpec p;
  p.kind = kind;
  p.elim_constant = c;
  p.restarts = restarts;
  return p;
}

}  // namespace

TEST_CASE("uniform play on the two-half example") {
  const Round horizon = 10000;
  const auto env = PreferenceSequence::PiecewiseConstant({{1, kOneWins}, {horizon / 2 + 1, kTwoWins}}, horizon);
  // Expected increment: average over the four ordered pairs.
  double expect = 0.0;
  for (Round t = 1; t <= horizon; ++t) {
    double r = 0.0;
    for (Arm a = 0; a < 2; ++a)
      for (Arm b = 0; b < 2; ++b) r += RegretIncrement(env.At(t), a, b) / 4;
    expect += r;
  }
  CHECK(expect == doctest::Approx(0.25 * horizon));
  const auto spec = Spec(PolicySpec::Kind::kUniform);
  for (std::uint64_t seed : {1, 2, 3}) {
    const double total = RunSingle(env, spec, seed).total();
    CHECK(std::abs(total - expect) <= 0.05 * expect);
  }
  const auto x = RunSingle(env, spec, 9), y = RunSingle(env, spec, 9);
  CHECK(x.cumulative == y.cumulative);
}

TEST_CASE("uniform regret grows linearly") {
  const auto env = PreferenceSequence::ScriptedSwitches(4, 0.3, 0, 8000);
  const auto rec = RunSingle(env, Spec(PolicySpec::Kind::kUniform), 4);
  const double rate = 0.3 * (1.0 - 1.0 / 4);  // a played arm loses 0.3 unless it is the winner
  for (Round t : {2000, 4000, 8000}) {
    CHECK(std::abs(rec.cumulative[t - 1] - rate * t) <= 0.05 * rate * t);
  }
}

TEST_CASE("even restart rounds") {
  CHECK(EvenRestartRounds(100, 0).empty());
  CHECK(EvenRestartRounds(100, 1) == std::vector<Round>{51});
  CHECK(EvenRestartRounds(100, 3) == std::vector<Round>{26, 51, 76});
  CHECK(EvenRestartRounds(10, 2) == std::vector<Round>{5, 9});
  const auto r = EvenRestartRounds(20000, 7);
  REQUIRE(r.size() == 7);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] - r[i - 1] == r[0] - 1);
}

TEST_CASE("zero budget is a single elimination phase") {
  const auto env = PreferenceSequence::ScriptedSwitches(3, 0.4, 0, 6000);
  const auto fixed = RunSingle(env, Spec(PolicySpec::Kind::kFixedBudgetRestart, 1.0, 0), 8);
  const auto oracle = RunSingle(env, Spec(PolicySpec::Kind::kOracleRestart), 8);
  CHECK(fixed.cumulative == oracle.cumulative);
  CHECK(fixed.episode.back() == 1);
}

TEST_CASE("oracle restarts at every winner switch") {
  const auto env = PreferenceSequence::ScriptedSwitches(3, 0.4, 5, 12000);
  auto policy = OracleRestart(3, 12000, 1.0, env.WinnerSwitchRounds(), 3);
  CHECK(policy.restart_rounds() == env.WinnerSwitchRounds());
  RngStream env_rng(DeriveSeed(3, "env"));
  for (Round t = 1; t <= 12000; ++t) {
    const auto [a, b] = policy.SelectPair(t);
    CHECK(policy.active_set().Contains(a));
    policy.Observe(t, SampleOutcome(env.At(t), a, b, env_rng));
  }
  CHECK(policy.restarts_taken() == 5);
}

TEST_CASE("baselines learn on a stationary environment") {
  const auto env = PreferenceSequence::ScriptedSwitches(2, 0.4, 0, 20000);
  auto policy = OracleRestart(2, 20000, 1.0, {}, 1);
  RngStream env_rng(DeriveSeed(1, "env"));
  for (Round t = 1; t <= 20000; ++t) {
    const auto [a, b] = policy.SelectPair(t);
    policy.Observe(t, SampleOutcome(env.At(t), a, b, env_rng));
  }
  CHECK(policy.active_set() == ArmSet::Full(1));
  CHECK(policy.restarts_taken() == 0);
}

TEST_CASE("comparisons on scripted switches") {
  const auto env = PreferenceSequence::ScriptedSwitches(2, 0.4, 2, 20000);
  const double oracle = MeanTotal(env, Spec(PolicySpec::Kind::kOracleRestart), 50);
  const double anaconda = MeanTotal(env, Spec(PolicySpec::Kind::kAnaconda), 50);
  // One restart halfway misses both true switches (at 6667 and 13334).
  const double fixed = MeanTotal(env, Spec(PolicySpec::Kind::kFixedBudgetRestart, 1.0, 1), 50);
  MESSAGE("oracle " << oracle << " anaconda " << anaconda << " fixed " << fixed);
  CHECK(oracle <= anaconda);
  CHECK(fixed > oracle);
}
