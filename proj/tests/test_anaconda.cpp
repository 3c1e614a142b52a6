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
#include <map>

#include "nsduel/anaconda.hpp"
#include "nsduel/preferences.hpp"
#include "oracles.hpp"

using namespace nsduel;

namespace {

AnacondaConfig Config(Round horizon, int k, double c, std::uint64_t seed) {
  AnacondaConfig cfg;
  cfg.horizon = horizon;
  cfg.k = k;
  cfg.elim_constant = c;
  cfg.seed = seed;
  return cfg;
}

PreferenceSequence Stationary(const PreferenceMatrix& p, Round horizon) {
  return PreferenceSequence::ExplicitList({p}, horizon, true);
}

std::vector<DuelEvent> EventsOf(const PolicyTrace& trace) {
  std::vector<DuelEvent> out;
  for (const auto& r : trace.rounds) out.push_back({r.t, r.first, r.second, r.outcome, r.active_size});
  return out;
}

void CheckSameTrace(const PolicyTrace& x, const PolicyTrace& y) {
  REQUIRE(x.rounds.size() == y.rounds.size());
  for (std::size_t i = 0; i < x.rounds.size(); ++i) {
    const auto &a = x.rounds[i], &b = y.rounds[i];
    REQUIRE((a.t == b.t && a.first == b.first && a.second == b.second &&
             a.outcome == b.outcome && a.active_size == b.active_size && a.depth == b.depth &&
             a.episode == b.episode));
  }
  CHECK(x.episode_starts == y.episode_starts);
  REQUIRE(x.eliminations.size() == y.eliminations.size());
  for (std::size_t i = 0; i < x.eliminations.size(); ++i) {
    const auto &a = x.eliminations[i], &b = y.eliminations[i];
    CHECK((a.round == b.round && a.arm == b.arm && a.scope == b.scope && a.frame == b.frame &&
           a.witness.a_prime == b.witness.a_prime && a.witness.s1 == b.witness.s1 &&
           a.witness.s2 == b.witness.s2 && a.witness.sum == b.witness.sum &&
           a.witness.threshold == b.witness.threshold));
  }
  REQUIRE(x.replays.size() == y.replays.size());
  for (std::size_t i = 0; i < x.replays.size(); ++i) {
    const auto &a = x.replays[i], &b = y.replays[i];
    CHECK((a.id == b.id && a.parent == b.parent && a.episode == b.episode && a.start == b.start &&
           a.duration == b.duration && a.depth == b.depth));
  }
}

// Structural invariants of any trace.
void CheckStructure(const PolicyTrace& trace, Round horizon, int k) {
  REQUIRE(static_cast<Round>(trace.rounds.size()) == horizon);
  REQUIRE(!trace.episode_starts.empty());
  CHECK(trace.episode_starts.front() == 1);
  std::map<int, const ReplayNode*> by_id;
  for (const auto& n : trace.replays) by_id[n.id] = &n;
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    const RoundLog& r = trace.rounds[i];
    CHECK(r.t == static_cast<Round>(i) + 1);
    CHECK(r.active_size >= 1);
    CHECK(r.active_size <= k);
    CHECK(r.episode >= 1);
    if (i > 0) CHECK(r.episode >= trace.rounds[i - 1].episode);
    const bool starts_episode =
        r.episode != (i > 0 ? trace.rounds[i - 1].episode : 0);
    if (starts_episode) {
      CHECK(trace.episode_starts[r.episode - 1] == r.t);
      CHECK(r.depth == 0);
      CHECK(r.active_size == k);
    }
  }
  for (const auto& n : trace.replays) {
    if (n.parent < 0) {
      CHECK(n.depth == 0);
      CHECK(n.start == trace.episode_starts[n.episode - 1]);
      CHECK(n.duration == horizon + 1 - n.start);
      continue;
    }
    const ReplayNode& p = *by_id.at(n.parent);
    CHECK(n.depth == p.depth + 1);
    CHECK(n.episode == p.episode);
    CHECK(n.start > p.start);
    // The child check follows t <- t + 1 in the parent's last iteration too.
    CHECK(n.start <= p.start + p.duration + 1);
    // A child's first round is played with every arm active.
    CHECK(trace.rounds[n.start - 1].depth == n.depth);
    CHECK(trace.rounds[n.start - 1].active_size == k);
  }
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS(Anaconda(Config(1, 3, 1.0, 0)));
  CHECK_THROWS(Anaconda(Config(100, 1, 1.0, 0)));
  CHECK_THROWS(Anaconda(Config(100, 65, 1.0, 0)));
  CHECK_THROWS(Anaconda(Config(100, 3, 0.0, 0)));
  CHECK_NOTHROW(Anaconda(Config(100, 64, 1.0, 0)));
}

TEST_CASE("replay durations") {
  CHECK(Anaconda::ReplayDurations(2) == std::vector<Round>{2});
  CHECK(Anaconda::ReplayDurations(8) == std::vector<Round>{2, 4, 8});
  CHECK(Anaconda::ReplayDurations(9) == std::vector<Round>{2, 4, 8, 16});
  const auto d = Anaconda::ReplayDurations(20000);
  CHECK(d.front() == 2);
  CHECK(d.back() == 32768);
  for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] == 2 * d[i - 1]);
}

TEST_CASE("schedule draws") {
  Anaconda alg(Config(1000, 3, 1.0, 5));
  for (Round s = 2; s < 50; ++s)
    for (Round m : {2, 4, 64}) CHECK(alg.ScheduleQuery(s, m) == alg.ScheduleQuery(s, m));
  CHECK_THROWS(alg.ScheduleQuery(1, 2));

  // s - t_l = 4, m = 4: rate 1 / sqrt(16).
  const int n = 100000;
  int hits = 0, first = 0;
  for (int seed = 0; seed < n; ++seed) {
    Anaconda a(Config(1000, 2, 1.0, static_cast<std::uint64_t>(seed)));
    hits += a.ScheduleQuery(5, 4) ? 1 : 0;
    first += a.ScheduleQuery(2, 2) ? 1 : 0;
  }
  CHECK(std::abs(static_cast<double>(hits) / n - 0.25) <= 0.005);
  CHECK(std::abs(static_cast<double>(first) / n - 1 / std::sqrt(2.0)) <= 0.005);
}

TEST_CASE("pairs are uniform over the active set") {
  const int k = 5;
  const int n = 100000;
  Anaconda alg(Config(n, k, 1.0, 77));
  std::vector<int> count(k * k, 0);
  int same = 0;
  for (Round t = 1; t <= n; ++t) {
    const auto [a, b] = alg.SelectPair(t);
    ++count[a * k + b];
    same += a == b ? 1 : 0;
    alg.Observe(t, 0);  // no wins: nothing is ever eliminated
    REQUIRE(alg.active_size() == k);
  }
  const double p = 1.0 / (k * k);
  const double sigma = std::sqrt(n * p * (1 - p));
  for (int c : count) CHECK(std::abs(c - n * p) <= 3 * sigma);
  const double q = 1.0 / k;
  CHECK(std::abs(same - n * q) <= 3 * std::sqrt(n * q * (1 - q)));
}

TEST_CASE("a single active arm is played against itself") {
  const auto env = Stationary(PreferenceMatrix::FromRows({{0.5, 1.0}, {0.0, 0.5}}), 3000);
  const auto trace = RunAnaconda(Config(3000, 2, 0.1, 3), env);
  int singles = 0;
  for (const auto& r : trace.rounds) {
    if (r.active_size != 1) continue;
    ++singles;
    CHECK(r.first == r.second);
  }
  CHECK(singles > 0);
  CheckStructure(trace, 3000, 2);
}

TEST_CASE("determinism and structure") {
  const auto env = PreferenceSequence::ScriptedSwitches(3, 0.4, 3, 8000);
  const auto cfg = Config(8000, 3, 0.5, 99);
  const auto x = RunAnaconda(cfg, env);
  const auto y = RunAnaconda(cfg, env);
  CheckSameTrace(x, y);
  CheckStructure(x, 8000, 3);
  CHECK(x.replays.size() > 10);
  auto other = cfg;
  other.seed = 100;
  const auto z = RunAnaconda(other, env);
  bool differs = false;
  for (std::size_t i = 0; i < z.rounds.size() && !differs; ++i)
    differs = z.rounds[i].first != x.rounds[i].first || z.rounds[i].second != x.rounds[i].second;
  CHECK(differs);
}

TEST_CASE("replaying a logged run reproduces it exactly") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto env = PreferenceSequence::ScriptedSwitches(4, 0.45, 2, 6000);
    const auto cfg = Config(6000, 4, 0.3, seed);
    const auto trace = RunAnaconda(cfg, env);
    CHECK(!trace.eliminations.empty());
    CheckSameTrace(ReplayEvents(cfg, EventsOf(trace)), trace);
  }
  const auto env = PreferenceSequence::ScriptedSwitches(3, 0.4, 1, 500);
  const auto cfg = Config(500, 3, 0.3, 4);
  auto events = EventsOf(RunAnaconda(cfg, env));
  events[100].active_size = events[100].active_size == 1 ? 2 : 1;
  CHECK_THROWS(ReplayEvents(cfg, events));
}

TEST_CASE("elimination witnesses re-verify against dense sums") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int k = 3;
    const Round horizon = 300;
    const auto env = PreferenceSequence::ScriptedSwitches(k, 0.5, static_cast<int>(seed % 3), horizon);
    const auto cfg = Config(horizon, k, 0.05, seed);
    const auto trace = RunAnaconda(cfg, env);
    CheckStructure(trace, horizon, k);
    const auto est = oracle::DenseEstimates(EventsOf(trace), k);
    std::map<int, Round> frame_start;
    for (const auto& n : trace.replays) frame_start[n.id] = n.start;
    for (const auto& e : trace.eliminations) {
      const Witness& w = e.witness;
      const int episode = trace.rounds[e.round - 1].episode;
      const Round window = e.scope == EliminationScope::kGood ? trace.episode_starts[episode - 1]
                                                              : frame_start.at(e.frame);
      CHECK(w.s1 >= window);
      CHECK(w.s1 <= w.s2);
      // The good-set check precedes t <- t + 1, the active-set check follows it.
      if (e.scope == EliminationScope::kGood) {
        CHECK(w.s2 < e.round);
      } else {
        CHECK(w.s2 <= e.round);
      }
      const double sum = oracle::DenseSum(est, k, w.a_prime, e.arm, w.s1, w.s2);
      CHECK(sum == w.sum);
      CHECK(sum > oracle::Threshold(w.s2 - w.s1, k, horizon, 0.05));
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("a forced replay plays t0 through t0 + m0") {
  const auto env = Stationary(PreferenceMatrix::FromRows({{0.5, 0.6, 0.6}, {0.4, 0.5, 0.5}, {0.4, 0.5, 0.5}}), 200);
  auto cfg = Config(200, 3, 1.0, 8);
  cfg.random_schedule = false;
  cfg.forced_replays = {{50, 16}, {55, 4}};
  const auto trace = RunAnaconda(cfg, env);
  auto depth = [&](Round t) { return trace.rounds[t - 1].depth; };
  CHECK(depth(49) == 0);
  for (Round t = 50; t <= 54; ++t) CHECK(depth(t) == 1);
  for (Round t = 55; t <= 59; ++t) CHECK(depth(t) == 2);
  for (Round t = 60; t <= 66; ++t) CHECK(depth(t) == 1);
  CHECK(depth(67) == 0);
  CHECK(trace.replays.size() == 3);
  CheckStructure(trace, 200, 3);
}

TEST_CASE("an emptied good set starts a new episode") {
  const auto env = PreferenceSequence::ScriptedSwitches(2, 0.4, 2, 20000);
  const auto trace = RunAnaconda(Config(20000, 2, 1.0, 21), env);
  CHECK(trace.episode_starts.size() > 1);
  CheckStructure(trace, 20000, 2);
  for (std::size_t i = 1; i < trace.episode_starts.size(); ++i) {
    // The previous episode ended on a good-set elimination of its last arm.
    const Round start = trace.episode_starts[i];
    bool emptied = false;
    for (const auto& e : trace.eliminations)
      emptied = emptied || (e.scope == EliminationScope::kGood && e.round == start - 1);
    CHECK(emptied);
  }
}

TEST_CASE("stationary: the winner stays good") {
  const auto env = Stationary(PreferenceMatrix::FromRows({{0.5, 0.9}, {0.1, 0.5}}), 5000);
  int kept = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto trace = RunAnaconda(Config(5000, 2, 1.0, seed), env);
    bool lost = false;
    for (const auto& e : trace.eliminations)
      lost = lost || (e.scope == EliminationScope::kGood && e.arm == 0);
    kept += lost ? 0 : 1;
  }
  CHECK(kept >= 95);
}

TEST_CASE("restarts follow a winner switch") {
  int restarts = 0, unexplained = 0;
  for (int switches : {2, 4}) {
    const auto env = PreferenceSequence::ScriptedSwitches(2, 0.4, switches, 20000);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto trace = RunAnaconda(Config(20000, 2, 1.0, seed), env);
      const auto& st = trace.episode_starts;
      for (std::size_t i = 1; i < st.size(); ++i) {
        ++restarts;
        bool seen = false;
        for (Round tau : env.WinnerSwitchRounds()) seen = seen || (tau > st[i - 1] && tau < st[i]);
        unexplained += seen ? 0 : 1;
      }
    }
  }
  CHECK(restarts > 20);
  CHECK(unexplained <= 0.05 * restarts);
}

TEST_CASE("a well-timed replay eliminates the bad arm") {
  // Arm 2 loses with gap 0.4; its first bad segment (c3 = 1) is [1, 2122).
  // A replay forced at round 500 with m = 4096 covers it.
  const Round horizon = 10000;
  const auto env = Stationary(PreferenceMatrix::FromRows({{0.5, 0.9}, {0.1, 0.5}}), horizon);
  int eliminated = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto cfg = Config(horizon, 2, 1.0, seed);
    cfg.random_schedule = false;
    cfg.forced_replays = {{500, 4096}};
    const auto trace = RunAnaconda(cfg, env);
    REQUIRE(trace.replays.size() == 2);
    const int replay = trace.replays[1].id;
    bool hit = false;
    for (const auto& e : trace.eliminations) {
      hit = hit || (e.arm == 1 && e.scope == EliminationScope::kActive && e.frame == replay);
    }
    eliminated += hit ? 1 : 0;
  }
  CHECK(eliminated >= 90);
}
