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

#ifndef NSDUEL_TYPES_HPP_
#define NSDUEL_TYPES_HPP_

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsduel {

// Arms are 0-based internally and 1-based in every file and console format.
using Arm = int;
// Rounds are 1-based, as in t = 1, ..., T.
using Round = std::int64_t;

inline constexpr int kMaxArms = 64;

// Set of arms in [0, k), k <= kMaxArms.
class ArmSet {
 public:
  constexpr ArmSet() = default;

  static constexpr ArmSet Full(int k) {
    ArmSet s;
    s.bits_ = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    return s;
  }

  constexpr bool Contains(Arm a) const { return (bits_ >> a) & 1U; }
  constexpr void Insert(Arm a) { bits_ |= std::uint64_t{1} << a; }
  constexpr void Erase(Arm a) { bits_ &= ~(std::uint64_t{1} << a); }
  constexpr int Size() const { return std::popcount(bits_); }
  constexpr bool Empty() const { return bits_ == 0; }
  constexpr std::uint64_t Bits() const { return bits_; }

  std::vector<Arm> Members() const {
    std::vector<Arm> out;
    out.reserve(Size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  constexpr bool operator==(const ArmSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

class NoCondorcetWinner : public std::runtime_error {
 public:
  explicit NoCondorcetWinner(Round round)
      : std::runtime_error(round > 0 ? "no Condorcet winner at round " +
                                           std::to_string(round)
                                     : "no Condorcet winner"),
        round_(round) {}
  // 0 when the matrix is not attached to a round.
  Round round() const { return round_; }

 private:
  Round round_;
};

class InvalidPreferences : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutOfOrderRound : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class EmptyActiveSet : public std::logic_error {
 public:
  EmptyActiveSet() : std::logic_error("active set is empty") {}
};

}  // namespace nsduel

#endif  // NSDUEL_TYPES_HPP_
