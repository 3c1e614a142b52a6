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

#ifndef NSDUEL_BASELINES_HPP_
#define NSDUEL_BASELINES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nsduel/estimator.hpp"
#include "nsduel/policy.hpp"
#include "nsduel/rng.hpp"

namespace nsduel {

// Uniform independent pair every round; never learns.
class UniformRandom final : public Policy {
 public:
  UniformRandom(int k, std::uint64_t seed);

  std::pair<Arm, Arm> SelectPair(Round t) override;
  void Observe(Round, int) override {}
  std::string name() const override { return "uniform"; }
  int active_size() const override { return k_; }

 private:
  int k_;
  RngStream rng_;
};

// A single elimination phase (one replay without children, using the same
// estimator and threshold as Anaconda) restarted from scratch at fixed
// rounds, and whenever its active set empties.
class RestartingElimination final : public Policy {
 public:
  RestartingElimination(std::string name, int k, Round horizon, double c,
                        std::vector<Round> restart_rounds, std::uint64_t seed);

  std::pair<Arm, Arm> SelectPair(Round t) override;
  void Observe(Round t, int outcome) override;
  std::string name() const override { return name_; }
  int episode() const override { return episode_; }
  int active_size() const override { return last_active_size_; }

  const std::vector<Round>& restart_rounds() const { return restarts_; }
  int restarts_taken() const { return episode_ - 1; }
  const ArmSet& active_set() const { return active_; }

 private:
  void Restart(Round t);

  std::string name_;
  int k_;
  EliminationRule rule_;
  std::vector<Round> restarts_;
  std::size_t next_restart_ = 0;
  RngStream rng_;
  EstimateStore store_;
  Round phase_start_ = 1;
  ArmSet active_;
  int episode_ = 1;
  std::pair<Arm, Arm> pending_{0, 0};
  int last_active_size_ = 0;
};

// Restarts exactly at the environment's winner switch rounds.
RestartingElimination OracleRestart(int k, Round horizon, double c,
                                    std::vector<Round> switch_rounds,
                                    std::uint64_t seed);

// Restarts every ceil(T / (num_restarts + 1)) rounds.
RestartingElimination FixedBudgetRestart(int k, Round horizon, double c,
                                         int num_restarts, std::uint64_t seed);

// 1 + j * ceil(T / (n + 1)) for j >= 1 while <= T.
std::vector<Round> EvenRestartRounds(Round horizon, int num_restarts);

}  // namespace nsduel

#endif  // NSDUEL_BASELINES_HPP_
