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

#include "nsduel/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace nsduel {

UniformRandom::UniformRandom(int k, std::uint64_t seed)
    : k_(k), rng_(DeriveSeed(seed, "pairs")) {}

std::pair<Arm, Arm> UniformRandom::SelectPair(Round) {
  const auto a = static_cast<Arm>(rng_.Below(k_));
  const auto b = static_cast<Arm>(rng_.Below(k_));
  return {a, b};
}

RestartingElimination::RestartingElimination(std::string name, int k,
                                             Round horizon, double c,
                                             std::vector<Round> restart_rounds,
                                             std::uint64_t seed)
    : name_(std::move(name)),
      k_(k),
      rule_(k, horizon, c),
      restarts_(std::move(restart_rounds)),
      rng_(DeriveSeed(seed, "pairs")),
      store_(k),
      active_(ArmSet::Full(k)) {
  std::sort(restarts_.begin(), restarts_.end());
  restarts_.erase(std::unique(restarts_.begin(), restarts_.end()), restarts_.end());
  if (!restarts_.empty() && restarts_.front() < 2) {
    throw std::invalid_argument("restart rounds must be >= 2");
  }
}

std::pair<Arm, Arm> RestartingElimination::SelectPair(Round) {
  const auto members = active_.Members();
  if (members.empty()) throw EmptyActiveSet();
  last_active_size_ = static_cast<int>(members.size());
  pending_ = {members[rng_.Below(members.size())], members[rng_.Below(members.size())]};
  return pending_;
}

void RestartingElimination::Restart(Round t) {
  phase_start_ = t;
  active_ = ArmSet::Full(k_);
  ++episode_;
}

void RestartingElimination::Observe(Round t, int outcome) {
  store_.Record(DuelEvent{t, pending_.first, pending_.second, outcome, last_active_size_});
  const Round next = t + 1;
  while (next_restart_ < restarts_.size() && restarts_[next_restart_] < next) ++next_restart_;
  if (next_restart_ < restarts_.size() && restarts_[next_restart_] == next) {
    Restart(next);
    return;
  }
  for (Arm a : active_.Members()) {
    if (store_.ViolationEndingAt(a, phase_start_, t, rule_)) active_.Erase(a);
  }
  if (active_.Empty()) Restart(next);
}

RestartingElimination OracleRestart(int k, Round horizon, double c,
                                    std::vector<Round> switch_rounds,
                                    std::uint64_t seed) {
  return RestartingElimination("oracle_restart", k, horizon, c,
                               std::move(switch_rounds), seed);
}

std::vector<Round> EvenRestartRounds(Round horizon, int num_restarts) {
  if (num_restarts < 0) throw std::invalid_argument("restart count must be >= 0");
  std::vector<Round> out;
  const Round period = (horizon + num_restarts) / (num_restarts + 1);
  for (Round r = 1 + period; r <= horizon && num_restarts > 0; r += period) {
    out.push_back(r);
  }
  return out;
}

RestartingElimination FixedBudgetRestart(int k, Round horizon, double c,
                                         int num_restarts, std::uint64_t seed) {
  return RestartingElimination("fixed_budget_restart", k, horizon, c,
                               EvenRestartRounds(horizon, num_restarts), seed);
}

}  // namespace nsduel
