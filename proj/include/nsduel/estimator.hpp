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

#ifndef NSDUEL_ESTIMATOR_HPP_
#define NSDUEL_ESTIMATOR_HPP_

#include <optional>
#include <vector>

#include "nsduel/range_min.hpp"
#include "nsduel/types.hpp"

namespace nsduel {

// One played round: ordered pair (first, second), the outcome of first
// against second, and the size of the active set the pair was drawn from.
struct DuelEvent {
  Round t;
  Arm first;
  Arm second;
  int outcome;
  int active_size;

  bool operator==(const DuelEvent&) const = default;
};

// Elimination threshold C ln(T) K sqrt(max(len, K^2)). The product
// C ln(T) K is computed once so every caller rounds identically.
class EliminationRule {
 public:
  EliminationRule(int k, Round horizon, double c);

  double Threshold(Round len) const;
  int k() const { return k_; }
  Round horizon() const { return horizon_; }
  double constant() const { return c_; }

 private:
  int k_;
  Round horizon_;
  double c_;
  double scale_;
  Round floor_;
};

double ElimThreshold(Round len, int k, Round horizon, double c);

// An interval [s1, s2] on which sum of estimates for (a_prime, a) exceeds the
// threshold for length s2 - s1.
struct Witness {
  Arm a_prime;
  Round s1;
  Round s2;
  double sum;
  double threshold;
};

// Importance-weighted gap estimates
//   est_t(a', a) = |A_t|^2 1{a_t = a', b_t = a} o_t - 1/2,
// stored sparsely. Each ordered pair keeps only its rounds with a nonzero
// weight |A_t|^2 o_t, with prefix weights and a range-minimum table over the
// running sum just before each such round. All sums are half-integers, so
// every interval sum is exact in double precision.
class EstimateStore {
 public:
  explicit EstimateStore(int k);

  int k() const { return k_; }
  Round last_round() const { return last_round_; }
  const std::vector<DuelEvent>& events() const { return events_; }

  // Throws OutOfOrderRound unless event.t exceeds every recorded round.
  void Record(const DuelEvent& event);

  // est_t(a_prime, a) for a recorded round t.
  double Estimate(Arm a_prime, Arm a, Round t) const;

  // sum_{t=s1..s2} est_t(a_prime, a); requires 1 <= s1 <= s2 <= last_round().
  double IntervalSum(Arm a_prime, Arm a, Round s1, Round s2) const;

  // Some s1 in [window_start, s2] and a' with IntervalSum(a', a, s1, s2) >
  // rule.Threshold(s2 - s1), or nullopt. Only rounds carrying a weight for
  // (a', a) can maximise the statistic over s1 (between them it strictly
  // increases in s1), so those are the candidates; branch-and-bound over
  // them uses the range-minimum table.
  std::optional<Witness> ViolationEndingAt(Arm a, Round window_start, Round s2,
                                           const EliminationRule& rule) const;

 private:
  struct PairIndex {
    std::vector<Round> rounds;
    std::vector<double> prefix_weight;  // inclusive
    RangeMin before;                    // running sum just before each round
  };

  const PairIndex& pair(Arm a_prime, Arm a) const { return pairs_[a_prime * k_ + a]; }
  // Sum of weights of (a', a) over rounds <= t.
  double WeightThrough(const PairIndex& idx, Round t) const;
  std::optional<Witness> Search(const PairIndex& idx, Arm a_prime, Round s2,
                                double top, std::size_t lo, std::size_t hi,
                                const EliminationRule& rule) const;

  int k_;
  Round last_round_ = 0;
  std::vector<DuelEvent> events_;
  std::vector<PairIndex> pairs_;
};

// Searches every interval [s1, s2] with window_start <= s1 <= s2 < now.
// Returns the witness with the smallest s2.
std::optional<Witness> FindViolation(const EstimateStore& store, Arm a,
                                     Round window_start, Round now,
                                     const EliminationRule& rule);

}  // namespace nsduel

#endif  // NSDUEL_ESTIMATOR_HPP_
