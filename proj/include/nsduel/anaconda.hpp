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

#ifndef NSDUEL_ANACONDA_HPP_
#define NSDUEL_ANACONDA_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nsduel/estimator.hpp"
#include "nsduel/policy.hpp"
#include "nsduel/preferences.hpp"
#include "nsduel/rng.hpp"
#include "nsduel/types.hpp"

namespace nsduel {

// A replay start that is scheduled regardless of the random draw.
struct ForcedReplay {
  Round start;
  Round duration;
};

struct AnacondaConfig {
  Round horizon = 0;
  int k = 0;
  double elim_constant = 1.0;
  std::uint64_t seed = 0;
  bool log_replay_tree = true;
  // When false only `forced_replays` are scheduled. Diagnostics use this to
  // isolate a single replay.
  bool random_schedule = true;
  std::vector<ForcedReplay> forced_replays;

  // Throws std::invalid_argument unless T >= 2, 2 <= K <= 64 and C > 0.
  void Validate() const;
};

enum class EliminationScope { kGood, kActive };

struct EliminationRecord {
  Round round;  // round whose processing removed the arm
  Arm arm;
  EliminationScope scope;
  int frame;  // replay id that performed the check
  Witness witness;
};

struct ReplayNode {
  int id;
  int parent;  // -1 for an episode's root
  int episode;
  Round start;
  Round duration;
  int depth;
};

struct RoundLog {
  Round t;
  Arm first;
  Arm second;
  int outcome;
  int active_size;
  int depth;
  int episode;
};

struct PolicyTrace {
  std::vector<RoundLog> rounds;
  std::vector<Round> episode_starts;
  std::vector<EliminationRecord> eliminations;
  std::vector<ReplayNode> replays;
};

// Episodic elimination with randomly scheduled nested replays.
//
// Each episode starts with every arm good and runs a root replay over the
// remaining horizon. A replay started at t0 with duration m0 plays rounds
// t0, ..., t0 + m0 (or until T, or until no good arm is left), drawing both
// arms of every pair independently and uniformly from its active set. After
// each round:
//   1. arms with a violating interval inside [episode start, t) leave the
//      good set;
//   2. the active set is saved locally and t advances;
//   3. if some B(t, m) = 1, a child replay of the largest such m starts at t
//      with every arm active;
//   4. on continuing (or on resuming after the child), the active set becomes
//      the saved set minus arms with a violating interval inside [t0, t).
// The episode ends when the good set empties. B(s, m) ~ Bernoulli of
// 1 / sqrt(m (s - episode start)) for m = 2, 4, ..., 2^ceil(log2 T); draws are
// counter-based, so every (seed, episode, s, m) has one fixed value.
//
// Violation checks are incremental: a set is checked against each interval
// end s2 once, which is equivalent to rechecking every interval because the
// sets only shrink between resets.
class Anaconda final : public Policy {
 public:
  explicit Anaconda(AnacondaConfig config);

  std::pair<Arm, Arm> SelectPair(Round t) override;
  void Observe(Round t, int outcome) override;
  // Plays an externally chosen pair instead of drawing one; it must be drawn
  // from the current active set. Used to re-drive logged traces.
  void PlayScripted(Round t, Arm first, Arm second);

  std::string name() const override { return "anaconda"; }
  int episode() const override { return episode_; }
  int frame_depth() const override { return last_depth_; }
  int active_size() const override { return last_active_size_; }

  // B(s, m) in the current episode. Requires s > episode start.
  bool ScheduleQuery(Round s, Round m) const;
  // Largest scheduled m at round s, if any.
  std::optional<Round> ScheduledReplay(Round s) const;
  // {2, 4, ..., 2^ceil(log2 T)}.
  static std::vector<Round> ReplayDurations(Round horizon);

  const AnacondaConfig& config() const { return config_; }
  const EliminationRule& rule() const { return rule_; }
  Round next_round() const { return t_; }
  bool finished() const { return frames_.empty(); }
  Round episode_start() const { return episode_start_; }
  const ArmSet& good_set() const { return good_; }
  const ArmSet& active_set() const { return active_; }
  int depth() const { return static_cast<int>(frames_.size()) - 1; }
  const EstimateStore& store() const { return store_; }
  const PolicyTrace& trace() const { return trace_; }

 private:
  struct Frame {
    int id;
    Round start;
    Round duration;
    ArmSet local;
    Round checked_through;  // last interval end checked for the active set
  };

  void StartEpisode();
  void PushFrame(Round start, Round duration);
  void EliminateFromGood(Round t);
  void EliminateFromActive(Frame& frame);
  bool Continues(const Frame& frame) const;

  AnacondaConfig config_;
  EliminationRule rule_;
  std::vector<Round> durations_;
  RngStream pair_rng_;
  std::uint64_t schedule_seed_;
  EstimateStore store_;

  Round t_ = 1;
  int episode_ = 0;
  Round episode_start_ = 1;
  ArmSet good_;
  ArmSet active_;
  std::vector<Frame> frames_;
  int next_frame_id_ = 0;

  std::optional<std::pair<Arm, Arm>> pending_;
  int last_depth_ = 0;
  int last_active_size_ = 0;
  PolicyTrace trace_;
};

struct RoundOutcome {
  Round t;
  Arm first;
  Arm second;
  int outcome;
  int active_size;
  int depth;
  int episode;
};

// Executes one round against `env`, sampling the outcome from env_rng.
RoundOutcome Step(Anaconda& alg, const PreferenceSequence& env, RngStream& env_rng);

// Full run over the horizon. Outcomes come from the stream "env" derived from
// config.seed.
PolicyTrace RunAnaconda(const AnacondaConfig& config, const PreferenceSequence& env);

// Re-drives the algorithm with the pairs and outcomes of a logged run. Throws
// std::runtime_error if a logged pair or active-set size is inconsistent with
// the replayed state.
PolicyTrace ReplayEvents(const AnacondaConfig& config,
                         const std::vector<DuelEvent>& events);

}  // namespace nsduel

#endif  // NSDUEL_ANACONDA_HPP_
