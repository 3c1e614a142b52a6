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

#include "nsduel/anaconda.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nsduel {

void AnacondaConfig::Validate() const {
  if (horizon < 2) throw std::invalid_argument("horizon must be >= 2");
  if (k < 2 || k > kMaxArms) {
    throw std::invalid_argument("arm count must lie in [2, " + std::to_string(kMaxArms) + "]");
  }
  if (!(elim_constant > 0.0)) throw std::invalid_argument("elimination constant must be > 0");
  for (const auto& f : forced_replays) {
    if (f.start < 2 || f.duration < 1) throw std::invalid_argument("bad forced replay");
  }
}

std::vector<Round> Anaconda::ReplayDurations(Round horizon) {
  const int top = std::bit_width(static_cast<std::uint64_t>(std::max<Round>(horizon, 2) - 1));
  std::vector<Round> out;
  for (int e = 1; e <= top; ++e) out.push_back(Round{1} << e);
  return out;
}

Anaconda::Anaconda(AnacondaConfig config)
    : config_((config.Validate(), std::move(config))),
      rule_(config_.k, config_.horizon, config_.elim_constant),
      durations_(ReplayDurations(config_.horizon)),
      pair_rng_(DeriveSeed(config_.seed, "pairs")),
      schedule_seed_(DeriveSeed(config_.seed, "schedule")),
      store_(config_.k) {
  trace_.rounds.reserve(static_cast<std::size_t>(config_.horizon));
  StartEpisode();
}

void Anaconda::StartEpisode() {
  ++episode_;
  episode_start_ = t_;
  good_ = ArmSet::Full(config_.k);
  trace_.episode_starts.push_back(t_);
  PushFrame(t_, config_.horizon + 1 - t_);
}

void Anaconda::PushFrame(Round start, Round duration) {
  const int parent = frames_.empty() ? -1 : frames_.back().id;
  const int id = next_frame_id_++;
  frames_.push_back(Frame{id, start, duration, ArmSet{}, start - 1});
  active_ = ArmSet::Full(config_.k);
  if (config_.log_replay_tree) {
    trace_.replays.push_back(
        ReplayNode{id, parent, episode_, start, duration, depth()});
  }
}

bool Anaconda::ScheduleQuery(Round s, Round m) const {
  if (s <= episode_start_) throw std::invalid_argument("replay start must follow the episode start");
  for (const auto& f : config_.forced_replays) {
    if (f.start == s && f.duration == m) return true;
  }
  if (!config_.random_schedule) return false;
  const double p = 1.0 / std::sqrt(static_cast<double>(m) *
                                   static_cast<double>(s - episode_start_));
  const auto bits = HashWords({schedule_seed_, static_cast<std::uint64_t>(episode_),
                               static_cast<std::uint64_t>(s),
                               static_cast<std::uint64_t>(m)});
  return UnitFromBits(bits) < p;
}

std::optional<Round> Anaconda::ScheduledReplay(Round s) const {
  std::optional<Round> best;
  for (const auto& f : config_.forced_replays) {
    if (f.start == s && (!best || f.duration > *best)) best = f.duration;
  }
  if (!config_.random_schedule) return best;
  for (auto it = durations_.rbegin(); it != durations_.rend(); ++it) {
    if (best && *best >= *it) break;
    if (ScheduleQuery(s, *it)) return *it;
  }
  return best;
}

std::pair<Arm, Arm> Anaconda::SelectPair(Round t) {
  if (finished() || t != t_) {
    throw std::logic_error("pair requested for round " + std::to_string(t) +
                           ", expected " + std::to_string(t_));
  }
  const auto members = active_.Members();
  if (members.empty()) throw EmptyActiveSet();
  const Arm a = members[pair_rng_.Below(members.size())];
  const Arm b = members[pair_rng_.Below(members.size())];
  pending_ = {a, b};
  last_depth_ = depth();
  last_active_size_ = active_.Size();
  return *pending_;
}

void Anaconda::PlayScripted(Round t, Arm first, Arm second) {
  if (finished() || t != t_) {
    throw std::logic_error("scripted pair for round " + std::to_string(t) +
                           ", expected " + std::to_string(t_));
  }
  if (first < 0 || second < 0 || first >= config_.k || second >= config_.k ||
      !active_.Contains(first) || !active_.Contains(second)) {
    throw std::runtime_error("scripted pair at round " + std::to_string(t) +
                             " is not drawn from the active set");
  }
  pending_ = {first, second};
  last_depth_ = depth();
  last_active_size_ = active_.Size();
}

void Anaconda::EliminateFromGood(Round t) {
  const Round s2 = t - 1;
  if (s2 < episode_start_) return;
  for (Arm a : good_.Members()) {
    if (auto w = store_.ViolationEndingAt(a, episode_start_, s2, rule_)) {
      good_.Erase(a);
      trace_.eliminations.push_back(
          EliminationRecord{t, a, EliminationScope::kGood, frames_.back().id, *w});
    }
  }
}

void Anaconda::EliminateFromActive(Frame& frame) {
  ArmSet next = frame.local;
  const Round last = t_ - 1;
  for (Arm a : frame.local.Members()) {
    for (Round s2 = frame.checked_through + 1; s2 <= last; ++s2) {
      if (auto w = store_.ViolationEndingAt(a, frame.start, s2, rule_)) {
        next.Erase(a);
        trace_.eliminations.push_back(
            EliminationRecord{last, a, EliminationScope::kActive, frame.id, *w});
        break;
      }
    }
  }
  frame.checked_through = last;
  active_ = next;
}

bool Anaconda::Continues(const Frame& frame) const {
  return t_ <= config_.horizon && t_ <= frame.start + frame.duration && !good_.Empty();
}

void Anaconda::Observe(Round t, int outcome) {
  if (!pending_ || t != t_) throw std::logic_error("observation without a selected pair");
  const auto [a, b] = *pending_;
  pending_.reset();
  store_.Record(DuelEvent{t, a, b, outcome, last_active_size_});
  trace_.rounds.push_back(RoundLog{t, a, b, outcome, last_active_size_, last_depth_, episode_});

  EliminateFromGood(t);
  frames_.back().local = active_;
  ++t_;

  if (!good_.Empty() && t_ <= config_.horizon) {
    if (auto m = ScheduledReplay(t_)) {
      PushFrame(t_, *m);
      return;
    }
  }
  while (true) {
    Frame& f = frames_.back();
    // A frame that stops here returns straight to its parent, whose own check
    // overwrites the active set, so only continuing frames need the check.
    if (Continues(f)) {
      EliminateFromActive(f);
      // A replay left with no playable arm ends like one that ran out of
      // rounds; an emptied root ends the episode.
      if (!active_.Empty()) break;
    }
    frames_.pop_back();
    if (frames_.empty()) {
      if (t_ <= config_.horizon) StartEpisode();
      break;
    }
  }
}

RoundOutcome Step(Anaconda& alg, const PreferenceSequence& env, RngStream& env_rng) {
  const Round t = alg.next_round();
  const auto [a, b] = alg.SelectPair(t);
  const int o = SampleOutcome(env.At(t), a, b, env_rng);
  const int size = alg.active_size();
  const int depth = alg.frame_depth();
  const int episode = alg.episode();
  alg.Observe(t, o);
  return RoundOutcome{t, a, b, o, size, depth, episode};
}

PolicyTrace RunAnaconda(const AnacondaConfig& config, const PreferenceSequence& env) {
  if (env.horizon() != config.horizon || env.k() != config.k) {
    throw std::invalid_argument("environment does not match the configuration");
  }
  Anaconda alg(config);
  RngStream env_rng(DeriveSeed(config.seed, "env"));
  while (!alg.finished()) Step(alg, env, env_rng);
  return alg.trace();
}

PolicyTrace ReplayEvents(const AnacondaConfig& config,
                         const std::vector<DuelEvent>& events) {
  Anaconda alg(config);
  for (const DuelEvent& e : events) {
    if (alg.finished()) throw std::runtime_error("trace is longer than the horizon");
    alg.PlayScripted(e.t, e.first, e.second);
    if (alg.active_size() != e.active_size) {
      throw std::runtime_error("active set size mismatch at round " + std::to_string(e.t));
    }
    alg.Observe(e.t, e.outcome);
  }
  return alg.trace();
}

}  // namespace nsduel
