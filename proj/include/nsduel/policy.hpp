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

#ifndef NSDUEL_POLICY_HPP_
#define NSDUEL_POLICY_HPP_

#include <string>
#include <utility>

#include "nsduel/types.hpp"

namespace nsduel {

// A dueling-bandit learner. Each round the harness calls SelectPair(t) and
// then Observe(t, outcome) with the outcome of first against second. Policies
// see nothing else of the environment.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::pair<Arm, Arm> SelectPair(Round t) = 0;
  virtual void Observe(Round t, int outcome) = 0;

  virtual std::string name() const = 0;
  // Restart counter, 1-based; policies without restarts stay at 1.
  virtual int episode() const { return 1; }
  // Nesting depth of the procedure that selected the last pair.
  virtual int frame_depth() const { return 0; }
  // Size of the set the last pair was drawn from.
  virtual int active_size() const = 0;
};

}  // namespace nsduel

#endif  // NSDUEL_POLICY_HPP_
