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

#include "nsduel/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nsduel {

EliminationRule::EliminationRule(int k, Round horizon, double c)
    : k_(k),
      horizon_(horizon),
      c_(c),
      scale_(c * std::log(static_cast<double>(horizon)) * k),
      floor_(static_cast<Round>(k) * k) {
  if (k < 2) throw std::invalid_argument("elimination rule needs K >= 2");
  if (horizon < 2) throw std::invalid_argument("elimination rule needs T >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("elimination constant must be > 0");
}

double EliminationRule::Threshold(Round len) const {
  return scale_ * std::sqrt(static_cast<double>(std::max(len, floor_)));
}

double ElimThreshold(Round len, int k, Round horizon, double c) {
  return EliminationRule(k, horizon, c).Threshold(len);
}

EstimateStore::EstimateStore(int k) : k_(k), pairs_(static_cast<std::size_t>(k) * k) {
  if (k < 1 || k > kMaxArms) throw std::invalid_argument("bad arm count");
}

void EstimateStore::Record(const DuelEvent& e) {
  if (e.t <= last_round_) {
    throw OutOfOrderRound("round " + std::to_string(e.t) +
                          " recorded after round " + std::to_string(last_round_));
  }
  if (e.first < 0 || e.first >= k_ || e.second < 0 || e.second >= k_ ||
      e.active_size < 1 || e.active_size > k_ || (e.outcome != 0 && e.outcome != 1)) {
    throw std::invalid_argument("malformed duel event at round " + std::to_string(e.t));
  }
  last_round_ = e.t;
  events_.push_back(e);
  if (e.outcome == 0) return;
  PairIndex& idx = pairs_[e.first * k_ + e.second];
  const double before = idx.prefix_weight.empty() ? 0.0 : idx.prefix_weight.back();
  const double weight = static_cast<double>(e.active_size) * e.active_size;
  idx.rounds.push_back(e.t);
  idx.prefix_weight.push_back(before + weight);
  idx.before.Append(before - static_cast<double>(e.t - 1) / 2.0);
}

double EstimateStore::Estimate(Arm a_prime, Arm a, Round t) const {
  if (t < 1 || t > last_round_) throw RangeError("round not recorded");
  auto it = std::lower_bound(events_.begin(), events_.end(), t,
                             [](const DuelEvent& e, Round r) { return e.t < r; });
  if (it == events_.end() || it->t != t) return -0.5;
  if (it->first != a_prime || it->second != a) return -0.5;
  return static_cast<double>(it->active_size) * it->active_size * it->outcome - 0.5;
}

double EstimateStore::WeightThrough(const PairIndex& idx, Round t) const {
  auto it = std::upper_bound(idx.rounds.begin(), idx.rounds.end(), t);
  if (it == idx.rounds.begin()) return 0.0;
  return idx.prefix_weight[(it - idx.rounds.begin()) - 1];
}

double EstimateStore::IntervalSum(Arm a_prime, Arm a, Round s1, Round s2) const {
  if (s1 < 1 || s1 > s2 || s2 > last_round_) {
    throw RangeError("interval [" + std::to_string(s1) + ", " + std::to_string(s2) +
                     "] not inside recorded rounds [1, " +
                     std::to_string(last_round_) + "]");
  }
  const PairIndex& idx = pair(a_prime, a);
  const double w = WeightThrough(idx, s2) - WeightThrough(idx, s1 - 1);
  return w - static_cast<double>(s2 - s1 + 1) / 2.0;
}

std::optional<Witness> EstimateStore::Search(const PairIndex& idx, Arm a_prime,
                                             Round s2, double top, std::size_t lo,
                                             std::size_t hi,
                                             const EliminationRule& rule) const {
  const double loosest = rule.Threshold(s2 - idx.rounds[hi]);
  if (top - idx.before.Min(lo, hi) <= loosest) return std::nullopt;
  if (lo == hi) {
    return Witness{a_prime, idx.rounds[lo], s2, top - idx.before[lo], loosest};
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  if (auto w = Search(idx, a_prime, s2, top, lo, mid, rule)) return w;
  return Search(idx, a_prime, s2, top, mid + 1, hi, rule);
}

std::optional<Witness> EstimateStore::ViolationEndingAt(
    Arm a, Round window_start, Round s2, const EliminationRule& rule) const {
  if (window_start < 1 || window_start > s2 || s2 > last_round_) {
    throw RangeError("violation window outside recorded rounds");
  }
  for (Arm a_prime = 0; a_prime < k_; ++a_prime) {
    const PairIndex& idx = pair(a_prime, a);
    auto first = std::lower_bound(idx.rounds.begin(), idx.rounds.end(), window_start);
    auto last = std::upper_bound(first, idx.rounds.end(), s2);
    if (first == last) continue;
    const auto lo = static_cast<std::size_t>(first - idx.rounds.begin());
    const auto hi = static_cast<std::size_t>(last - idx.rounds.begin()) - 1;
    const double top = idx.prefix_weight[hi] - static_cast<double>(s2) / 2.0;
    if (auto w = Search(idx, a_prime, s2, top, lo, hi, rule)) return w;
  }
  return std::nullopt;
}

std::optional<Witness> FindViolation(const EstimateStore& store, Arm a,
                                     Round window_start, Round now,
                                     const EliminationRule& rule) {
  for (Round s2 = window_start; s2 < now; ++s2) {
    if (auto w = store.ViolationEndingAt(a, window_start, s2, rule)) return w;
  }
  return std::nullopt;
}

}  // namespace nsduel
