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

#ifndef NSDUEL_RANGE_MIN_HPP_
#define NSDUEL_RANGE_MIN_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <vector>

namespace nsduel {

// Append-only sparse table answering range-minimum queries in O(1).
// Appending costs O(log n).
class RangeMin {
 public:
  void Append(double v) {
    if (levels_.empty()) levels_.emplace_back();
    levels_[0].push_back(v);
    const std::size_t n = levels_[0].size();
    for (std::size_t k = 1; (std::size_t{1} << k) <= n; ++k) {
      if (levels_.size() <= k) levels_.emplace_back();
      const std::size_t i = n - (std::size_t{1} << k);
      const auto& below = levels_[k - 1];
      levels_[k].push_back(std::min(below[i], below[i + (std::size_t{1} << (k - 1))]));
    }
  }

  std::size_t size() const { return levels_.empty() ? 0 : levels_[0].size(); }
  double operator[](std::size_t i) const { return levels_[0][i]; }

  // Minimum over [lo, hi], lo <= hi < size().
  double Min(std::size_t lo, std::size_t hi) const {
    const std::size_t len = hi - lo + 1;
    const int k = std::bit_width(len) - 1;
    return std::min(levels_[k][lo], levels_[k][hi + 1 - (std::size_t{1} << k)]);
  }

 private:
  std::vector<std::vector<double>> levels_;
};

}  // namespace nsduel

#endif  // NSDUEL_RANGE_MIN_HPP_
