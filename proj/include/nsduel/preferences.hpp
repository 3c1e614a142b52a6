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

#ifndef NSDUEL_PREFERENCES_HPP_
#define NSDUEL_PREFERENCES_HPP_

#include <optional>
#include <span>
#include <vector>

#include "nsduel/rng.hpp"
#include "nsduel/types.hpp"

namespace nsduel {

// K x K matrix of win probabilities: entry (a, b) is the probability that a
// beats b in a duel. Validated on construction: entries in [0, 1], diagonal
// exactly 1/2, and p(a, b) + p(b, a) = 1 within 1e-12.
class PreferenceMatrix {
 public:
  PreferenceMatrix(int k, std::vector<double> row_major);
  static PreferenceMatrix FromRows(const std::vector<std::vector<double>>& rows);
  // All entries 1/2 (no Condorcet winner).
  static PreferenceMatrix Indifferent(int k);

  int k() const { return k_; }
  double operator()(Arm a, Arm b) const { return p_[a * k_ + b]; }
  double Gap(Arm a, Arm b) const { return p_[a * k_ + b] - 0.5; }
  const std::vector<double>& data() const { return p_; }
  std::vector<std::vector<double>> Rows() const;

  bool operator==(const PreferenceMatrix&) const = default;

 private:
  int k_;
  std::vector<double> p_;
};

inline double Gap(const PreferenceMatrix& p, Arm a, Arm b) { return p.Gap(a, b); }

// The arm beating every other arm with probability > 1/2. Off-diagonal ties
// at exactly 1/2 count as no domination.
std::optional<Arm> FindCondorcetWinner(const PreferenceMatrix& p);
// Throws NoCondorcetWinner.
Arm CondorcetWinner(const PreferenceMatrix& p);

// One duel outcome: 1 if `a` wins against `b`.
int SampleOutcome(const PreferenceMatrix& p, Arm a, Arm b, RngStream& rng);

// Tolerance for the structural checks below; linear-link utility models hit
// the triangle inequality with equality, up to rounding.
inline constexpr double kStructureTolerance = 1e-12;

// Strong stochastic transitivity over every chain a > b > c.
bool CheckSst(const PreferenceMatrix& p);
// Stochastic triangle inequality over every chain a > b > c.
bool CheckSti(const PreferenceMatrix& p);
// For every a with a > b and a > c: gap(a, c) <= 2 gap(a, b) + gap(b, c).
bool CheckTriangle(const PreferenceMatrix& p);

// Symmetric monotone link mapping utility differences to win probabilities.
struct Link {
  enum class Kind { kLinear, kLogistic };
  Kind kind = Kind::kLinear;
  double scale = 1.0;

  // Linear: 1/2 + scale * x / 2. Logistic: 1 / (1 + exp(-scale * x)).
  double operator()(double x) const;
};

struct UtilityKeyframe {
  Round round;
  std::vector<double> utilities;
};

// Per-round utilities interpolated linearly between keyframes and held
// constant outside them. Linear links reject keyframes where some
// |scale * (u(a) - u(b))| exceeds 1, which bounds every interpolated round.
class UtilityModel {
 public:
  UtilityModel(Link link, std::vector<UtilityKeyframe> keyframes);

  int k() const { return k_; }
  const Link& link() const { return link_; }
  const std::vector<UtilityKeyframe>& keyframes() const { return keyframes_; }

  std::vector<double> UtilitiesAt(Round t) const;
  PreferenceMatrix MatrixAt(Round t) const;

  static PreferenceMatrix MatrixFromUtilities(const Link& link,
                                              std::span<const double> u);

 private:
  Link link_;
  int k_;
  std::vector<UtilityKeyframe> keyframes_;
};

// Matrix in effect from round `start` until the next segment starts.
struct MatrixSegment {
  Round start;
  PreferenceMatrix matrix;
};

// The preference sequence P_1, ..., P_T. Every round's matrix is validated to
// have a Condorcet winner when the sequence is built; NoCondorcetWinner names
// the first offending round.
class PreferenceSequence {
 public:
  // matrices[t - 1] for t = 1..T. When `repeat` is set the list is cycled to
  // fill the horizon, otherwise its length must equal the horizon.
  static PreferenceSequence ExplicitList(std::vector<PreferenceMatrix> matrices,
                                         Round horizon, bool repeat = false);
  // Segments sorted by start, the first starting at round 1.
  static PreferenceSequence PiecewiseConstant(std::vector<MatrixSegment> segments,
                                              Round horizon);
  static PreferenceSequence UtilityDrift(const UtilityModel& model, Round horizon);
  // `switches` equally spaced Condorcet-winner changes. Segment i starts at
  // 1 + floor(i * T / (switches + 1)) and its winner is arm i mod k, which
  // beats every other arm with probability 1/2 + gap; other pairs tie.
  static PreferenceSequence ScriptedSwitches(int k, double gap, int switches,
                                             Round horizon);

  Round horizon() const { return static_cast<Round>(index_.size()); }
  int k() const { return k_; }

  const PreferenceMatrix& At(Round t) const { return matrices_[index_[t - 1]]; }
  Arm Winner(Round t) const { return winners_[index_[t - 1]]; }
  // Exact equality of P_t and P_u.
  bool SameMatrix(Round t, Round u) const;
  // Rounds t >= 2 where the winner differs from round t - 1.
  const std::vector<Round>& WinnerSwitchRounds() const { return switch_rounds_; }

 private:
  PreferenceSequence(std::vector<PreferenceMatrix> matrices,
                     std::vector<std::uint32_t> index);

  int k_ = 0;
  std::vector<PreferenceMatrix> matrices_;
  std::vector<std::uint32_t> index_;
  std::vector<Arm> winners_;
  std::vector<Round> switch_rounds_;
};

}  // namespace nsduel

#endif  // NSDUEL_PREFERENCES_HPP_
