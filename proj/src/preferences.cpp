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

#include "nsduel/preferences.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace nsduel {

PreferenceMatrix::PreferenceMatrix(int k, std::vector<double> row_major)
    : k_(k), p_(std::move(row_major)) {
  if (k < 2 || k > kMaxArms) {
    throw InvalidPreferences("arm count must lie in [2, " +
                             std::to_string(kMaxArms) + "], got " +
                             std::to_string(k));
  }
  if (p_.size() != static_cast<std::size_t>(k) * k) {
    throw InvalidPreferences("matrix has " + std::to_string(p_.size()) +
                             " entries, expected " + std::to_string(k * k));
  }
  for (int a = 0; a < k; ++a) {
    if ((*this)(a, a) != 0.5) {
      throw InvalidPreferences("diagonal entry (" + std::to_string(a + 1) +
                               "," + std::to_string(a + 1) + ") is not 0.5");
    }
    for (int b = 0; b < k; ++b) {
      const double v = (*this)(a, b);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidPreferences("entry (" + std::to_string(a + 1) + "," +
                                 std::to_string(b + 1) + ") outside [0,1]");
      }
      if (std::abs(v + (*this)(b, a) - 1.0) > 1e-12) {
        throw InvalidPreferences("entries (" + std::to_string(a + 1) + "," +
                                 std::to_string(b + 1) +
                                 ") and its transpose do not sum to 1");
      }
    }
  }
}

PreferenceMatrix PreferenceMatrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  const int k = static_cast<int>(rows.size());
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != k) {
      throw InvalidPreferences("preference matrix must be square");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return PreferenceMatrix(k, std::move(flat));
}

PreferenceMatrix PreferenceMatrix::Indifferent(int k) {
  return PreferenceMatrix(k, std::vector<double>(static_cast<std::size_t>(k) * k, 0.5));
}

std::vector<std::vector<double>> PreferenceMatrix::Rows() const {
  std::vector<std::vector<double>> rows(k_);
  for (int a = 0; a < k_; ++a) {
    rows[a].assign(p_.begin() + a * k_, p_.begin() + (a + 1) * k_);
  }
  return rows;
}

std::optional<Arm> FindCondorcetWinner(const PreferenceMatrix& p) {
  for (Arm a = 0; a < p.k(); ++a) {
    bool beats_all = true;
    for (Arm b = 0; b < p.k() && beats_all; ++b) {
      if (b != a && !(p(a, b) > 0.5)) beats_all = false;
    }
    if (beats_all) return a;
  }
  return std::nullopt;
}

Arm CondorcetWinner(const PreferenceMatrix& p) {
  if (auto a = FindCondorcetWinner(p)) return *a;
  throw NoCondorcetWinner(0);
}

int SampleOutcome(const PreferenceMatrix& p, Arm a, Arm b, RngStream& rng) {
  return rng.Bernoulli(p(a, b)) ? 1 : 0;
}

namespace {

// Calls f(a, b, c) for every ordered triple of distinct arms.
template <typename F>
bool AllTriples(const PreferenceMatrix& p, F&& f) {
  const int k = p.k();
  for (Arm a = 0; a < k; ++a) {
    for (Arm b = 0; b < k; ++b) {
      if (b == a) continue;
      for (Arm c = 0; c < k; ++c) {
        if (c == a || c == b) continue;
        if (!f(a, b, c)) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool CheckSst(const PreferenceMatrix& p) {
  return AllTriples(p, [&](Arm a, Arm b, Arm c) {
    const double ab = p.Gap(a, b), bc = p.Gap(b, c);
    if (!(ab > 0.0 && bc > 0.0)) return true;
    return p.Gap(a, c) >= std::max(ab, bc) - kStructureTolerance;
  });
}

bool CheckSti(const PreferenceMatrix& p) {
  return AllTriples(p, [&](Arm a, Arm b, Arm c) {
    const double ab = p.Gap(a, b), bc = p.Gap(b, c);
    if (!(ab > 0.0 && bc > 0.0)) return true;
    return p.Gap(a, c) <= ab + bc + kStructureTolerance;
  });
}

bool CheckTriangle(const PreferenceMatrix& p) {
  return AllTriples(p, [&](Arm a, Arm b, Arm c) {
    const double ab = p.Gap(a, b), ac = p.Gap(a, c);
    if (!(ab > 0.0 && ac > 0.0)) return true;
    return ac <= 2.0 * ab + p.Gap(b, c) + kStructureTolerance;
  });
}

double Link::operator()(double x) const {
  switch (kind) {
    case Kind::kLinear:
      return 0.5 + scale * x / 2.0;
    case Kind::kLogistic:
      return 1.0 / (1.0 + std::exp(-scale * x));
  }
  return 0.5;
}

UtilityModel::UtilityModel(Link link, std::vector<UtilityKeyframe> keyframes)
    : link_(link), keyframes_(std::move(keyframes)) {
  if (keyframes_.empty()) throw InvalidPreferences("utility model needs a keyframe");
  if (!(link_.scale > 0.0)) throw InvalidPreferences("link scale must be positive");
  k_ = static_cast<int>(keyframes_.front().utilities.size());
  Round prev = 0;
  for (const auto& kf : keyframes_) {
    if (static_cast<int>(kf.utilities.size()) != k_) {
      throw InvalidPreferences("keyframes disagree on the arm count");
    }
    if (kf.round <= prev) {
      throw InvalidPreferences("keyframe rounds must be positive and increasing");
    }
    prev = kf.round;
    // Validates the link range (and the arm count) at every keyframe.
    MatrixFromUtilities(link_, kf.utilities);
  }
}

std::vector<double> UtilityModel::UtilitiesAt(Round t) const {
  if (t <= keyframes_.front().round) return keyframes_.front().utilities;
  if (t >= keyframes_.back().round) return keyframes_.back().utilities;
  auto hi = std::upper_bound(
      keyframes_.begin(), keyframes_.end(), t,
      [](Round r, const UtilityKeyframe& kf) { return r < kf.round; });
  auto lo = hi - 1;
  const double w = static_cast<double>(t - lo->round) /
                   static_cast<double>(hi->round - lo->round);
  std::vector<double> u(k_);
  for (int a = 0; a < k_; ++a) {
    u[a] = (1.0 - w) * lo->utilities[a] + w * hi->utilities[a];
  }
  return u;
}

PreferenceMatrix UtilityModel::MatrixAt(Round t) const {
  return MatrixFromUtilities(link_, UtilitiesAt(t));
}

PreferenceMatrix UtilityModel::MatrixFromUtilities(const Link& link,
                                                   std::span<const double> u) {
  const int k = static_cast<int>(u.size());
  if (k < 2 || k > kMaxArms) throw InvalidPreferences("bad utility vector size");
  std::vector<double> p(static_cast<std::size_t>(k) * k, 0.5);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const double diff = u[a] - u[b];
      if (link.kind == Link::Kind::kLinear && std::abs(link.scale * diff) > 1.0) {
        throw InvalidPreferences(
            "linear link needs |scale * (u(a) - u(b))| <= 1");
      }
      const double v = link(diff);
      p[a * k + b] = v;
      p[b * k + a] = 1.0 - v;
    }
  }
  return PreferenceMatrix(k, std::move(p));
}

PreferenceSequence::PreferenceSequence(std::vector<PreferenceMatrix> matrices,
                                       std::vector<std::uint32_t> index)
    : matrices_(std::move(matrices)), index_(std::move(index)) {
  if (matrices_.empty() || index_.empty()) {
    throw InvalidPreferences("preference sequence needs a horizon >= 1");
  }
  k_ = matrices_.front().k();
  for (const auto& m : matrices_) {
    if (m.k() != k_) throw InvalidPreferences("matrices disagree on the arm count");
  }
  constexpr Arm kUnchecked = -1;
  winners_.assign(matrices_.size(), kUnchecked);
  for (std::size_t i = 0; i < index_.size(); ++i) {
    Arm& w = winners_[index_[i]];
    if (w == kUnchecked) {
      auto cw = FindCondorcetWinner(matrices_[index_[i]]);
      if (!cw) throw NoCondorcetWinner(static_cast<Round>(i) + 1);
      w = *cw;
    }
  }
  for (Round t = 2; t <= horizon(); ++t) {
    if (Winner(t) != Winner(t - 1)) switch_rounds_.push_back(t);
  }
}

PreferenceSequence PreferenceSequence::ExplicitList(
    std::vector<PreferenceMatrix> matrices, Round horizon, bool repeat) {
  if (horizon < 1) throw InvalidPreferences("horizon must be >= 1");
  if (matrices.empty()) throw InvalidPreferences("explicit list is empty");
  if (!repeat && static_cast<Round>(matrices.size()) != horizon) {
    throw InvalidPreferences("explicit list has " + std::to_string(matrices.size()) +
                             " matrices for horizon " + std::to_string(horizon));
  }
  std::vector<std::uint32_t> index(horizon);
  for (Round t = 0; t < horizon; ++t) {
    index[t] = static_cast<std::uint32_t>(t % static_cast<Round>(matrices.size()));
  }
  return PreferenceSequence(std::move(matrices), std::move(index));
}

PreferenceSequence PreferenceSequence::PiecewiseConstant(
    std::vector<MatrixSegment> segments, Round horizon) {
  if (horizon < 1) throw InvalidPreferences("horizon must be >= 1");
  if (segments.empty() || segments.front().start != 1) {
    throw InvalidPreferences("the first segment must start at round 1");
  }
  std::vector<PreferenceMatrix> matrices;
  std::vector<std::uint32_t> index(horizon);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Round begin = segments[i].start;
    const Round end = i + 1 < segments.size() ? segments[i + 1].start : horizon + 1;
    if (end <= begin) throw InvalidPreferences("segment starts must increase");
    if (begin > horizon) throw InvalidPreferences("segment starts after the horizon");
    matrices.push_back(std::move(segments[i].matrix));
    for (Round t = begin; t < std::min(end, horizon + 1); ++t) {
      index[t - 1] = static_cast<std::uint32_t>(i);
    }
  }
  return PreferenceSequence(std::move(matrices), std::move(index));
}

PreferenceSequence PreferenceSequence::UtilityDrift(const UtilityModel& model,
                                                    Round horizon) {
  if (horizon < 1) throw InvalidPreferences("horizon must be >= 1");
  std::vector<PreferenceMatrix> matrices;
  std::vector<std::uint32_t> index(horizon);
  for (Round t = 1; t <= horizon; ++t) {
    PreferenceMatrix m = model.MatrixAt(t);
    if (matrices.empty() || !(matrices.back() == m)) matrices.push_back(std::move(m));
    index[t - 1] = static_cast<std::uint32_t>(matrices.size() - 1);
  }
  return PreferenceSequence(std::move(matrices), std::move(index));
}

PreferenceSequence PreferenceSequence::ScriptedSwitches(int k, double gap,
                                                        int switches,
                                                        Round horizon) {
  if (!(gap > 0.0 && gap <= 0.5)) throw InvalidPreferences("gap must lie in (0, 0.5]");
  if (switches < 0 || switches + 1 > horizon) {
    throw InvalidPreferences("switch count must lie in [0, T - 1]");
  }
  std::vector<MatrixSegment> segments;
  for (int i = 0; i <= switches; ++i) {
    const Round start = 1 + (static_cast<Round>(i) * horizon) / (switches + 1);
    const Arm winner = i % k;
    std::vector<double> p(static_cast<std::size_t>(k) * k, 0.5);
    for (Arm b = 0; b < k; ++b) {
      if (b == winner) continue;
      p[winner * k + b] = 0.5 + gap;
      p[b * k + winner] = 0.5 - gap;
    }
    segments.push_back({start, PreferenceMatrix(k, std::move(p))});
  }
  return PiecewiseConstant(std::move(segments), horizon);
}

bool PreferenceSequence::SameMatrix(Round t, Round u) const {
  const auto i = index_[t - 1], j = index_[u - 1];
  return i == j || matrices_[i] == matrices_[j];
}

}  // namespace nsduel
