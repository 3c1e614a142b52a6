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

#include "nsduel/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nsduel/baselines.hpp"
#include "nsduel/rng.hpp"

namespace nsduel {

std::string PolicySpec::Label() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kAnaconda:
      os << "anaconda(C=" << elim_constant << ")";
      break;
    case Kind::kUniform:
      os << "uniform";
      break;
    case Kind::kOracleRestart:
      os << "oracle_restart(C=" << elim_constant << ")";
      break;
    case Kind::kFixedBudgetRestart:
      os << "fixed_budget_restart(C=" << elim_constant << ",n=" << restarts << ")";
      break;
  }
  return os.str();
}

std::unique_ptr<Policy> MakePolicy(const PolicySpec& spec,
                                   const PreferenceSequence& env,
                                   std::uint64_t seed) {
  switch (spec.kind) {
    case PolicySpec::Kind::kAnaconda: {
      AnacondaConfig cfg;
      cfg.horizon = env.horizon();
      cfg.k = env.k();
      cfg.elim_constant = spec.elim_constant;
      cfg.seed = seed;
      return std::make_unique<Anaconda>(cfg);
    }
    case PolicySpec::Kind::kUniform:
      return std::make_unique<UniformRandom>(env.k(), seed);
    case PolicySpec::Kind::kOracleRestart:
      return std::make_unique<RestartingElimination>(OracleRestart(
          env.k(), env.horizon(), spec.elim_constant, env.WinnerSwitchRounds(), seed));
    case PolicySpec::Kind::kFixedBudgetRestart:
      return std::make_unique<RestartingElimination>(FixedBudgetRestart(
          env.k(), env.horizon(), spec.elim_constant, spec.restarts, seed));
  }
  throw std::invalid_argument("unknown policy kind");
}

double RegretIncrement(const PreferenceMatrix& p, Arm a, Arm b) {
  const Arm w = CondorcetWinner(p);
  return (p.Gap(w, a) + p.Gap(w, b)) / 2.0;
}

RunRecord RunSingle(const PreferenceSequence& env, const PolicySpec& spec,
                    std::uint64_t seed, bool with_measures) {
  const auto started = std::chrono::steady_clock::now();
  const Round T = env.horizon();
  auto policy = MakePolicy(spec, env, seed);
  RngStream env_rng(DeriveSeed(seed, "env"));

  RunRecord rec;
  rec.seed = seed;
  rec.policy = spec.Label();
  rec.regret.reserve(T);
  rec.cumulative.reserve(T);
  rec.episode.reserve(T);
  rec.frame_depth.reserve(T);
  rec.events.reserve(T);
  double cum = 0.0;
  int last_episode = 0;
  for (Round t = 1; t <= T; ++t) {
    const auto [a, b] = policy->SelectPair(t);
    const int episode = policy->episode();
    const int depth = policy->frame_depth();
    const int size = policy->active_size();
    const auto& p = env.At(t);
    const int o = SampleOutcome(p, a, b, env_rng);
    policy->Observe(t, o);

    const Arm w = env.Winner(t);
    const double r = (p.Gap(w, a) + p.Gap(w, b)) / 2.0;
    cum += r;
    rec.regret.push_back(r);
    rec.cumulative.push_back(cum);
    rec.episode.push_back(episode);
    rec.frame_depth.push_back(depth);
    rec.events.push_back(DuelEvent{t, a, b, o, size});
    if (episode != last_episode) {
      rec.episode_starts.push_back(t);
      last_episode = episode;
    }
  }
  if (auto* alg = dynamic_cast<Anaconda*>(policy.get())) rec.trace = alg->trace();
  if (with_measures) rec.measures = ComputeMeasures(env);
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rec;
}

void ParallelFor(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, jobs < 1 ? 1 : jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Summary Summarize(const std::vector<double>& values) {
  if (values.size() < 2) throw std::invalid_argument("standard error needs >= 2 values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return Summary{mean, std::sqrt(ss / (n - 1.0) / n)};
}

double LogLogSlope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("slope fit needs >= 2 matched points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && ys[i] > 0.0)) {
      throw std::invalid_argument("log-log fit needs positive values");
    }
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double ScalingFit(const std::vector<SweepCell>& cells) {
  std::vector<double> xs, ys;
  for (const auto& c : cells) {
    xs.push_back(c.switches + 1.0);
    ys.push_back(c.summary.mean);
  }
  return LogLogSlope(xs, ys);
}

SweepResult RunSweep(const SweepSpec& spec) {
  if (spec.seeds < 2) throw std::invalid_argument("a sweep needs at least 2 seeds");
  if (spec.policies.empty()) throw std::invalid_argument("a sweep needs a policy");
  std::vector<PreferenceSequence> envs;
  for (int s : spec.switch_counts) {
    envs.push_back(PreferenceSequence::ScriptedSwitches(spec.k, spec.gap, s, spec.horizon));
  }

  SweepResult result;
  for (const auto& policy : spec.policies) {
    std::vector<SweepCell> cells;
    for (std::size_t e = 0; e < envs.size(); ++e) {
      SweepCell cell{policy.Label(), spec.switch_counts[e], spec.horizon,
                     std::vector<double>(spec.seeds), {}};
      ParallelFor(spec.seeds, spec.jobs, [&](std::size_t i) {
        cell.totals[i] = RunSingle(envs[e], policy, spec.base_seed + i).total();
      });
      cell.summary = Summarize(cell.totals);
      cells.push_back(std::move(cell));
    }
    result.slopes[policy.Label()] = cells.size() >= 2 ? ScalingFit(cells) : 0.0;
    for (auto& c : cells) result.cells.push_back(std::move(c));
  }
  return result;
}

bool ConcentrationViolated(const PreferenceMatrix& p, Round horizon, double c1,
                           std::uint64_t seed) {
  const int k = p.k();
  const auto pairs = static_cast<std::size_t>(k) * k;
  RngStream rng(seed);
  // dev[pair][t]: running sum of est_t - gap over rounds <= t.
  std::vector<std::vector<double>> dev(pairs, std::vector<double>(horizon + 1, 0.0));
  const double weight = static_cast<double>(k) * k;
  for (Round t = 1; t <= horizon; ++t) {
    const auto a = static_cast<Arm>(rng.Below(k));
    const auto b = static_cast<Arm>(rng.Below(k));
    const int o = SampleOutcome(p, a, b, rng);
    for (std::size_t i = 0; i < pairs; ++i) {
      const Arm x = static_cast<Arm>(i / k), y = static_cast<Arm>(i % k);
      const double est = (x == a && y == b ? weight * o : 0.0) - 0.5;
      dev[i][t] = dev[i][t - 1] + est - p.Gap(x, y);
    }
  }
  const double scale = c1 * std::log(static_cast<double>(horizon));
  for (Round len = 1; len <= horizon; len *= 2) {
    const double bound =
        scale * (k * std::sqrt(static_cast<double>(len - 1)) + static_cast<double>(k) * k);
    for (Round s1 = 1; s1 + len - 1 <= horizon; s1 += len) {
      const Round s2 = s1 + len - 1;
      for (std::size_t i = 0; i < pairs; ++i) {
        if (std::abs(dev[i][s2] - dev[i][s1 - 1]) > bound) return true;
      }
    }
  }
  return false;
}

ConcentrationResult ConcentrationSuite(const PreferenceMatrix& p, Round horizon,
                                       int trials, double c1,
                                       std::uint64_t base_seed, int jobs) {
  if (horizon < 2 || trials < 1) throw std::invalid_argument("bad concentration settings");
  std::vector<char> hit(trials, 0);
  ParallelFor(trials, jobs, [&](std::size_t i) {
    hit[i] = ConcentrationViolated(p, horizon, c1,
                                   DeriveSeed(base_seed + i, "concentration"))
                 ? 1
                 : 0;
  });
  ConcentrationResult r;
  r.trials = trials;
  for (char h : hit) r.violations += h;
  return r;
}

}  // namespace nsduel
