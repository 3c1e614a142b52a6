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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>

#include "nsduel/experiment.hpp"
#include "nsduel/harness.hpp"
#include "nsduel/measures.hpp"
#include "nsduel/preferences.hpp"

namespace py = pybind11;
using namespace nsduel;

namespace {

PolicySpec MakeSpec(const std::string& kind, double c, int restarts) {
  static const std::map<std::string, PolicySpec::Kind> kinds = {
      {"anaconda", PolicySpec::Kind::kAnaconda},
      {"uniform", PolicySpec::Kind::kUniform},
      {"oracle_restart", PolicySpec::Kind::kOracleRestart},
      {"fixed_budget_restart", PolicySpec::Kind::kFixedBudgetRestart}};
  const auto it = kinds.find(kind);
  if (it == kinds.end()) throw py::value_error("unknown policy '" + kind + "'");
  if (!(c > 0.0)) throw py::value_error("C must be positive");
  if (restarts < 0) throw py::value_error("restarts must be >= 0");
  PolicySpec p;
  p.kind = it->second;
  p.elim_constant = c;
  p.restarts = restarts;
  return p;
}

py::dict MeasuresDict(const MeasureReport& r) {
  py::dict d;
  d["pref_switches"] = r.pref_switches;
  d["cw_switches"] = r.cw_switches;
  d["sig_switches"] = r.sig_switches();
  d["sig_switch_rounds"] = r.sig_switch_rounds;
  d["total_variation"] = r.total_variation;
  d["cw_variation"] = r.cw_variation;
  d["ordering_holds"] = r.OrderingHolds();
  return d;
}

py::dict SummaryDict(const Summary& s) {
  py::dict d;
  d["mean"] = s.mean;
  d["stderr"] = s.stderr_mean;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Non-stationary dueling bandit simulation core. Arms are 0-based.";

  py::register_exception<NoCondorcetWinner>(m, "NoCondorcetWinner", PyExc_ValueError);
  py::register_exception<InvalidPreferences>(m, "InvalidPreferences", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<PreferenceMatrix>(m, "PreferenceMatrix")
      .def(py::init(&PreferenceMatrix::FromRows), py::arg("rows"))
      .def_static("indifferent", &PreferenceMatrix::Indifferent, py::arg("k"))
      .def_property_readonly("k", &PreferenceMatrix::k)
      .def("rows", &PreferenceMatrix::Rows)
      .def("gap", &PreferenceMatrix::Gap, py::arg("a"), py::arg("b"))
      .def("__call__", &PreferenceMatrix::operator(), py::arg("a"), py::arg("b"))
      .def("__eq__", [](const PreferenceMatrix& x, const PreferenceMatrix& y) { return x == y; })
      .def("__repr__", [](const PreferenceMatrix& p) {
        return "PreferenceMatrix(k=" + std::to_string(p.k()) + ")";
      });

  m.def("condorcet_winner", &FindCondorcetWinner, py::arg("p"),
        "The Condorcet winner, or None.");
  m.def("check_sst", &CheckSst, py::arg("p"));
  m.def("check_sti", &CheckSti, py::arg("p"));
  m.def("check_triangle", &CheckTriangle, py::arg("p"));
  m.def("regret_increment", &RegretIncrement, py::arg("p"), py::arg("a"), py::arg("b"));
  m.def(
      "utility_matrix",
      [](const std::vector<double>& u, const std::string& link, double scale) {
        Link l;
        if (link == "linear") {
          l.kind = Link::Kind::kLinear;
        } else if (link == "logistic") {
          l.kind = Link::Kind::kLogistic;
        } else {
          throw py::value_error("link must be 'linear' or 'logistic'");
        }
        l.scale = scale;
        return UtilityModel::MatrixFromUtilities(l, u);
      },
      py::arg("utilities"), py::arg("link") = "logistic", py::arg("scale") = 1.0);

  py::class_<PreferenceSequence>(m, "PreferenceSequence")
      .def_static("explicit", &PreferenceSequence::ExplicitList, py::arg("matrices"),
                  py::arg("horizon"), py::arg("repeat") = false)
      .def_static(
          "piecewise_constant",
          [](const std::vector<std::pair<Round, PreferenceMatrix>>& segs, Round horizon) {
            std::vector<MatrixSegment> out;
            for (const auto& [start, p] : segs) out.push_back({start, p});
            return PreferenceSequence::PiecewiseConstant(std::move(out), horizon);
          },
          py::arg("segments"), py::arg("horizon"))
      .def_static("scripted_switches", &PreferenceSequence::ScriptedSwitches, py::arg("k"),
                  py::arg("gap"), py::arg("switches"), py::arg("horizon"))
      .def_property_readonly("horizon", &PreferenceSequence::horizon)
      .def_property_readonly("k", &PreferenceSequence::k)
      .def("matrix", &PreferenceSequence::At, py::arg("t"))
      .def("winner", &PreferenceSequence::Winner, py::arg("t"))
      .def("winner_switch_rounds", &PreferenceSequence::WinnerSwitchRounds);

  m.def("compute_measures", [](const PreferenceSequence& s) { return MeasuresDict(ComputeMeasures(s)); },
        py::arg("env"));

  m.def(
      "run_single",
      [](const PreferenceSequence& env, const std::string& policy, double c, int restarts,
         std::uint64_t seed) {
        const PolicySpec spec = MakeSpec(policy, c, restarts);
        RunRecord rec;
        {
          py::gil_scoped_release release;
          rec = RunSingle(env, spec, seed);
        }
        py::dict d;
        d["policy"] = rec.policy;
        d["seed"] = rec.seed;
        d["regret"] = rec.regret;
        d["cumulative"] = rec.cumulative;
        d["episode"] = rec.episode;
        d["frame_depth"] = rec.frame_depth;
        d["episode_starts"] = rec.episode_starts;
        d["total"] = rec.total();
        return d;
      },
      py::arg("env"), py::arg("policy") = "anaconda", py::arg("C") = 1.0,
      py::arg("restarts") = 0, py::arg("seed") = 0);

  m.def(
      "run_sweep",
      [](int k, double gap, Round horizon, std::vector<int> switch_counts,
         const std::vector<std::string>& policies, double c, int seeds,
         std::uint64_t base_seed, int jobs) {
        SweepSpec spec;
        spec.k = k;
        spec.gap = gap;
        spec.horizon = horizon;
        spec.switch_counts = std::move(switch_counts);
        for (const auto& p : policies) spec.policies.push_back(MakeSpec(p, c, 0));
        spec.seeds = seeds;
        spec.base_seed = base_seed;
        spec.jobs = jobs;
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = RunSweep(spec);
        }
        py::list cells;
        for (const auto& cell : r.cells) {
          py::dict d = SummaryDict(cell.summary);
          d["policy"] = cell.policy;
          d["switches"] = cell.switches;
          d["totals"] = cell.totals;
          cells.append(d);
        }
        py::dict out;
        out["cells"] = cells;
        out["slopes"] = r.slopes;
        return out;
      },
      py::arg("k") = 5, py::arg("gap") = 0.3, py::arg("horizon") = 20000,
      py::arg("switch_counts") = std::vector<int>{1, 2, 4, 8, 16},
      py::arg("policies") = std::vector<std::string>{"anaconda"}, py::arg("C") = 1.0,
      py::arg("seeds") = 2, py::arg("base_seed") = 0, py::arg("jobs") = 1);

  m.def(
      "concentration",
      [](const PreferenceMatrix& p, Round horizon, int trials, double c1,
         std::uint64_t base_seed, int jobs) {
        ConcentrationResult r;
        {
          py::gil_scoped_release release;
          r = ConcentrationSuite(p, horizon, trials, c1, base_seed, jobs);
        }
        py::dict d;
        d["trials"] = r.trials;
        d["violations"] = r.violations;
        d["frequency"] = r.frequency();
        return d;
      },
      py::arg("p"), py::arg("horizon"), py::arg("trials") = 200, py::arg("c1") = 6.0,
      py::arg("base_seed") = 0, py::arg("jobs") = 1);

  m.def(
      "parse_config",
      [](const std::string& text) { return CanonicalConfig(ParseConfig(text)); },
      py::arg("text"), "Validates a config and returns its canonical JSON.");
  m.def(
      "config_hash", [](const std::string& text) { return ConfigHash(ParseConfig(text)); },
      py::arg("text"));
  m.def(
      "build_env", [](const std::string& text) { return BuildEnv(ParseConfig(text)); },
      py::arg("text"));
}
