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

#include "nsduel/measures.hpp"

#include <algorithm>
#include <cmath>

#include "nsduel/range_min.hpp"

namespace nsduel {

bool MeasureReport::OrderingHolds() const {
  return sig_switches() <= cw_switches && cw_switches <= pref_switches &&
         cw_variation <= total_variation;
}

int CountPrefSwitches(const PreferenceSequence& seq) {
  int n = 0;
  for (Round t = 2; t <= seq.horizon(); ++t) n += seq.SameMatrix(t, t - 1) ? 0 : 1;
  return n;
}

int CountCwSwitches(const PreferenceSequence& seq) {
  return static_cast<int>(seq.WinnerSwitchRounds().size());
}

double TotalVariation(const PreferenceSequence& seq) {
  double v = 0.0;
  for (Round t = 2; t <= seq.horizon(); ++t) {
    if (seq.SameMatrix(t, t - 1)) continue;
    const auto& cur = seq.At(t).data();
    const auto& prev = seq.At(t - 1).data();
    double m = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) m = std::max(m, std::abs(cur[i] - prev[i]));
    v += m;
  }
  return v;
}

double CwVariation(const PreferenceSequence& seq) {
  double v = 0.0;
  for (Round t = 2; t <= seq.horizon(); ++t) {
    if (seq.SameMatrix(t, t - 1)) continue;
    const Arm w = seq.Winner(t);
    double m = 0.0;
    for (Arm a = 0; a < seq.k(); ++a) {
      m = std::max(m, std::abs(seq.At(t)(w, a) - seq.At(t - 1)(w, a)));
    }
    v += m;
  }
  return v;
}

std::vector<std::vector<double>> WinnerGapPrefix(const PreferenceSequence& seq) {
  const Round T = seq.horizon();
  std::vector<std::vector<double>> d(seq.k(), std::vector<double>(T + 1, 0.0));
  for (Round t = 1; t <= T; ++t) {
    const auto& p = seq.At(t);
    const Arm w = seq.Winner(t);
    for (Arm a = 0; a < seq.k(); ++a) d[a][t] = d[a][t - 1] + p.Gap(w, a);
  }
  return d;
}

namespace {

// Whether some s1 in [lo, hi] has d[s2] - d[s1 - 1] >= sqrt(k (s2 - s1)).
// Prunes with the range minimum of d and the shortest length in range; both
// bounds are monotone under rounding, so the answer is exact.
bool AnyCrossing(const std::vector<double>& d, const RangeMin& mins, int k,
                 Round s2, Round lo, Round hi) {
  const double top = d[s2];
  const double shortest = std::sqrt(static_cast<double>(k) * static_cast<double>(s2 - hi));
  if (top - mins.Min(lo - 1, hi - 1) < shortest) return false;
  if (lo == hi) return true;
  const Round mid = lo + (hi - lo) / 2;
  return AnyCrossing(d, mins, k, s2, lo, mid) ||
         AnyCrossing(d, mins, k, s2, mid + 1, hi);
}

std::optional<Round> FirstCrossing(const std::vector<double>& d,
                                   const RangeMin& mins, int k, Round begin,
                                   Round last_s2) {
  for (Round s2 = begin + 1; s2 <= last_s2; ++s2) {
    if (AnyCrossing(d, mins, k, s2, begin, s2 - 1)) return s2;
  }
  return std::nullopt;
}

}  // namespace

std::vector<SignificantPhase> SignificantPhases(const PreferenceSequence& seq) {
  const Round T = seq.horizon();
  const int k = seq.k();
  const auto d = WinnerGapPrefix(seq);
  std::vector<RangeMin> mins(k);
  for (Arm a = 0; a < k; ++a) {
    for (double v : d[a]) mins[a].Append(v);
  }

  std::vector<SignificantPhase> phases;
  Round begin = 1;
  while (true) {
    SignificantPhase phase{begin, T + 1, std::vector<std::optional<Round>>(k), 0};
    bool complete = true;
    Round latest = 0;
    // s2 < next switch <= T - 1.
    for (Arm a = 0; a < k; ++a) {
      phase.crossing[a] = FirstCrossing(d[a], mins[a], k, begin, T - 2);
      if (phase.crossing[a]) {
        latest = std::max(latest, *phase.crossing[a]);
      } else {
        complete = false;
      }
    }
    // Latest crossing wins; never crossing counts as latest of all.
    for (Arm a = 1; a < k; ++a) {
      const auto& best = phase.crossing[phase.last_safe];
      const auto& cur = phase.crossing[a];
      if (best && (!cur || *cur > *best)) phase.last_safe = a;
    }
    if (complete) phase.end = latest + 1;
    phases.push_back(std::move(phase));
    if (!complete) break;
    begin = latest + 1;
  }
  return phases;
}

std::vector<Round> SignificantCwSwitches(const PreferenceSequence& seq) {
  std::vector<Round> out;
  for (const auto& ph : SignificantPhases(seq)) {
    if (ph.end <= seq.horizon()) out.push_back(ph.end);
  }
  return out;
}

std::vector<Arm> LastSafeArms(const PreferenceSequence& seq) {
  std::vector<Arm> out;
  for (const auto& ph : SignificantPhases(seq)) out.push_back(ph.last_safe);
  return out;
}

std::vector<Segment> BadSegments(const PreferenceSequence& seq, Round t_start,
                                 Arm a, double c3) {
  const Round T = seq.horizon();
  if (t_start < 1 || t_start > T) throw RangeError("t_start outside [1, T]");
  if (a < 0 || a >= seq.k()) throw RangeError("arm out of range");
  std::vector<double> d(T + 1, 0.0);
  for (Round t = 1; t <= T; ++t) d[t] = d[t - 1] + seq.At(t).Gap(seq.Winner(t), a);
  const double scale = c3 * std::log(static_cast<double>(T)) * seq.k();

  std::vector<Round> starts{1};
  for (Round r : seq.WinnerSwitchRounds()) starts.push_back(r);

  std::vector<Segment> out;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const Round phase_end = i + 1 < starts.size() ? starts[i + 1] : T + 1;
    if (phase_end <= t_start) continue;
    Round s = std::max(t_start, starts[i]);
    while (s < phase_end) {
      Round found = 0;
      for (Round e = s; e < phase_end; ++e) {
        if (d[e] - d[s - 1] > scale * std::sqrt(static_cast<double>(e - s + 1))) {
          found = e;
          break;
        }
      }
      if (found == 0) {
        out.push_back({s, phase_end, false});
        break;
      }
      out.push_back({s, found + 1, true});
      s = found + 1;
    }
  }
  return out;
}

std::optional<Round> BadRound(const PreferenceSequence& seq, Round t_start, Arm a,
                              double c3, double c4) {
  const Round T = seq.horizon();
  const double scale = c4 * std::log(static_cast<double>(T));
  double mass = 0.0;
  for (const Segment& seg : BadSegments(seq, t_start, a, c3)) {
    if (!seg.bad) continue;
    mass += std::sqrt(static_cast<double>(seg.end - seg.begin));
    const Round s = seg.end + 1;
    if (s > T) break;
    if (mass > scale * std::sqrt(static_cast<double>(s - t_start))) return s;
  }
  return std::nullopt;
}

MeasureReport ComputeMeasures(const PreferenceSequence& seq) {
  MeasureReport r;
  r.pref_switches = CountPrefSwitches(seq);
  r.cw_switches = CountCwSwitches(seq);
  r.sig_switch_rounds = SignificantCwSwitches(seq);
  r.total_variation = TotalVariation(seq);
  r.cw_variation = CwVariation(seq);
  return r;
}

}  // namespace nsduel
