# Copyright 2026 The nsduel Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Non-stationary dueling bandit simulations. Arms are 0-based."""

from nsduel._core import (
    ConfigError,
    InvalidPreferences,
    NoCondorcetWinner,
    PreferenceMatrix,
    PreferenceSequence,
    build_env,
    check_sst,
    check_sti,
    check_triangle,
    compute_measures,
    concentration,
    condorcet_winner,
    config_hash,
    parse_config,
    regret_increment,
    run_single,
    run_sweep,
    utility_matrix,
)

__all__ = [
    "ConfigError",
    "InvalidPreferences",
    "NoCondorcetWinner",
    "PreferenceMatrix",
    "PreferenceSequence",
    "build_env",
    "check_sst",
    "check_sti",
    "check_triangle",
    "compute_measures",
    "concentration",
    "condorcet_winner",
    "config_hash",
    "parse_config",
    "regret_increment",
    "run_single",
    "run_sweep",
    "utility_matrix",
]
