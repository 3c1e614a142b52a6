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

#ifndef NSDUEL_MEASURES_HPP_
#define NSDUEL_MEASURES_HPP_

#include <optional>
#include <vector>

#include "nsduel/preferences.hpp"
#include "nsduel/types.hpp"

namespace nsduel {

struct MeasureReport {
  int pref_switches = 0;
  int cw_switches = 0;
  std::vector<Round> sig_switch_rounds;
  double total_variation = 0.0;
  double cw_variation = 0.0;

  int sig_switches() const { return static_cast<int>(sig_switch_rounds.size()); }
  // sig <= cw <= pref and cw_variation <= total_variation.
  bool OrderingHolds() const;
};

// Number of rounds t >= 2 with P_t != P_{t-1} (exact equality).
int CountPrefSwitches(const PreferenceSequence& seq);
// Number of rounds t >= 2 whose Condorcet winner differs from round t-1.
int CountCwSwitches(const PreferenceSequence& seq);
// Sum over t >= 2 of max_{a,b} |P_t(a,b) - P_{t-1}(a,b)|.
double TotalVariation(const PreferenceSequence& seq);
// Sum over t >= 2 of max_a |P_t(w_t, a) - P_{t-1}(w_t, a)|, w_t the winner at t.
double CwVariation(const PreferenceSequence& seq);

// Significant winner switches. Phase i starts at r_i (r_0 = 1); r_{i+1} is the
// first round in [r_i, T) such that every arm a has rounds r_i <= s1 < s2 <
// r_{i+1} with sum_{t=s1..s2} gap_t(w_t, a) >= sqrt(K (s2 - s1)).
// Returns r_1, r_2, ...
std::vector<Round> SignificantCwSwitches(const PreferenceSequence& seq);

// Per significant phase: the first round s2 at which each arm meets the
// significance condition (nullopt if it never does inside the phase).
struct SignificantPhase {
  Round begin;
  Round end;  // exclusive; T + 1 for the final, incomplete phase
  std::vector<std::optional<Round>> crossing;
  Arm last_safe;
};
std::vector<SignificantPhase> SignificantPhases(const PreferenceSequence& seq);

// The last arm to meet the significance condition in each significant phase.
// Arms that never meet it rank last; ties go to the smallest index.
std::vector<Arm> LastSafeArms(const PreferenceSequence& seq);

// Half-open segment [begin, end) of a bad-segment decomposition.
struct Segment {
  Round begin;
  Round end;
  bool bad;

  bool operator==(const Segment&) const = default;
};

// Splits every winner phase intersecting [t_start, T] into segments for arm
// `a`. Within a phase, a segment starting at s is bad if it is the shortest
// [s, e) inside the phase with sum_{t=s..e-1} gap_t(w_t, a) > c3 ln(T) K
// sqrt(e - s); otherwise it runs to the phase end and is not bad. The
// segments tile [t_start, T + 1).
std::vector<Segment> BadSegments(const PreferenceSequence& seq, Round t_start,
                                 Arm a, double c3);

// Smallest s > t_start with sum over bad segments ending before s of
// sqrt(length) > c4 ln(T) sqrt(s - t_start), searched over s <= T.
std::optional<Round> BadRound(const PreferenceSequence& seq, Round t_start, Arm a,
                              double c3, double c4);

MeasureReport ComputeMeasures(const PreferenceSequence& seq);

// Prefix sums D_a(t) = sum_{u <= t} gap_u(w_u, a) for t = 0..T, one vector per
// arm. Exposed so independent checks can share the summation order.
std::vector<std::vector<double>> WinnerGapPrefix(const PreferenceSequence& seq);

}  // namespace nsduel

#endif  // NSDUEL_MEASURES_HPP_
