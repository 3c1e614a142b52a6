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

#include "nsduel/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace nsduel {
namespace {

using nlohmann::json;

void CheckKeys(const json& obj, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

const json& Require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError("missing key '" + std::string(key) + "' in " + where);
  }
  return *it;
}

std::int64_t AsInt(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
  return v.get<std::int64_t>();
}

double AsDouble(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

MatrixRows AsMatrix(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw ConfigError(what + " must be a non-empty array");
  MatrixRows rows;
  for (const auto& row : v) {
    if (!row.is_array()) throw ConfigError(what + " rows must be arrays");
    std::vector<double> r;
    for (const auto& x : row) r.push_back(AsDouble(x, what + " entries"));
    rows.push_back(std::move(r));
  }
  return rows;
}

PolicySpec ParsePolicy(const json& j, const std::string& where) {
  CheckKeys(j, {"type", "C", "restarts"}, where);
  const json& type = Require(j, "type", where);
  if (!type.is_string()) throw ConfigError(where + ".type must be a string");
  PolicySpec p;
  const auto name = type.get<std::string>();
  if (name == "anaconda") {
    p.kind = PolicySpec::Kind::kAnaconda;
  } else if (name == "uniform") {
    p.kind = PolicySpec::Kind::kUniform;
  } else if (name == "oracle_restart") {
    p.kind = PolicySpec::Kind::kOracleRestart;
  } else if (name == "fixed_budget_restart") {
    p.kind = PolicySpec::Kind::kFixedBudgetRestart;
  } else {
    throw ConfigError("unknown policy type '" + name + "'");
  }
  if (j.contains("C")) p.elim_constant = AsDouble(j["C"], where + ".C");
  if (!(p.elim_constant > 0.0)) throw ConfigError(where + ".C must be positive");
  if (j.contains("restarts")) {
    p.restarts = static_cast<int>(AsInt(j["restarts"], where + ".restarts"));
    if (p.restarts < 0) throw ConfigError(where + ".restarts must be >= 0");
  }
  return p;
}

json PolicyJson(const PolicySpec& p) {
  json j;
  switch (p.kind) {
    case PolicySpec::Kind::kAnaconda: j["type"] = "anaconda"; break;
    case PolicySpec::Kind::kUniform: j["type"] = "uniform"; break;
    case PolicySpec::Kind::kOracleRestart: j["type"] = "oracle_restart"; break;
    case PolicySpec::Kind::kFixedBudgetRestart: j["type"] = "fixed_budget_restart"; break;
  }
  j["C"] = p.elim_constant;
  j["restarts"] = p.restarts;
  return j;
}

EnvSpec ParseEnv(const json& j) {
  const std::string where = "env";
  const json& type = Require(j, "type", where);
  if (!type.is_string()) throw ConfigError("env.type must be a string");
  const auto name = type.get<std::string>();
  EnvSpec env;
  if (name == "explicit") {
    CheckKeys(j, {"type", "matrices", "repeat"}, where);
    env.type = EnvSpec::Type::kExplicit;
    const json& ms = Require(j, "matrices", where);
    if (!ms.is_array() || ms.empty()) throw ConfigError("env.matrices must be a non-empty array");
    for (const auto& m : ms) env.matrices.push_back(AsMatrix(m, "env.matrices"));
    if (j.contains("repeat")) {
      if (!j["repeat"].is_boolean()) throw ConfigError("env.repeat must be a boolean");
      env.repeat = j["repeat"].get<bool>();
    }
  } else if (name == "piecewise_constant") {
    CheckKeys(j, {"type", "segments"}, where);
    env.type = EnvSpec::Type::kPiecewiseConstant;
    const json& segs = Require(j, "segments", where);
    if (!segs.is_array() || segs.empty()) throw ConfigError("env.segments must be a non-empty array");
    for (const auto& s : segs) {
      CheckKeys(s, {"start", "matrix"}, "env.segments[]");
      env.starts.push_back(AsInt(Require(s, "start", "env.segments[]"), "segment start"));
      env.matrices.push_back(AsMatrix(Require(s, "matrix", "env.segments[]"), "segment matrix"));
    }
  } else if (name == "utility_drift") {
    CheckKeys(j, {"type", "link", "keyframes"}, where);
    env.type = EnvSpec::Type::kUtilityDrift;
    if (j.contains("link")) {
      const json& link = j["link"];
      CheckKeys(link, {"kind", "scale"}, "env.link");
      if (link.contains("kind")) {
        const json& kind = link["kind"];
        if (kind == "linear") {
          env.link.kind = Link::Kind::kLinear;
        } else if (kind == "logistic") {
          env.link.kind = Link::Kind::kLogistic;
        } else {
          throw ConfigError("env.link.kind must be \"linear\" or \"logistic\"");
        }
      }
      if (link.contains("scale")) env.link.scale = AsDouble(link["scale"], "env.link.scale");
    }
    const json& kfs = Require(j, "keyframes", where);
    if (!kfs.is_array() || kfs.empty()) throw ConfigError("env.keyframes must be a non-empty array");
    for (const auto& kf : kfs) {
      CheckKeys(kf, {"round", "utilities"}, "env.keyframes[]");
      UtilityKeyframe frame;
      frame.round = AsInt(Require(kf, "round", "env.keyframes[]"), "keyframe round");
      const json& u = Require(kf, "utilities", "env.keyframes[]");
      if (!u.is_array()) throw ConfigError("keyframe utilities must be an array");
      for (const auto& x : u) frame.utilities.push_back(AsDouble(x, "keyframe utilities"));
      env.keyframes.push_back(std::move(frame));
    }
  } else if (name == "scripted_switches") {
    CheckKeys(j, {"type", "k", "gap", "switches"}, where);
    env.type = EnvSpec::Type::kScriptedSwitches;
    env.k = static_cast<int>(AsInt(Require(j, "k", where), "env.k"));
    env.gap = AsDouble(Require(j, "gap", where), "env.gap");
    env.switches = static_cast<int>(AsInt(Require(j, "switches", where), "env.switches"));
  } else {
    throw ConfigError("unknown env type '" + name + "'");
  }
  return env;
}

json EnvJson(const EnvSpec& env) {
  json j;
  switch (env.type) {
    case EnvSpec::Type::kExplicit:
      j["type"] = "explicit";
      j["matrices"] = env.matrices;
      j["repeat"] = env.repeat;
      break;
    case EnvSpec::Type::kPiecewiseConstant: {
      j["type"] = "piecewise_constant";
      json segs = json::array();
      for (std::size_t i = 0; i < env.matrices.size(); ++i) {
        segs.push_back({{"start", env.starts[i]}, {"matrix", env.matrices[i]}});
      }
      j["segments"] = segs;
      break;
    }
    case EnvSpec::Type::kUtilityDrift: {
      j["type"] = "utility_drift";
      j["link"] = {{"kind", env.link.kind == Link::Kind::kLinear ? "linear" : "logistic"},
                   {"scale", env.link.scale}};
      json kfs = json::array();
      for (const auto& kf : env.keyframes) {
        kfs.push_back({{"round", kf.round}, {"utilities", kf.utilities}});
      }
      j["keyframes"] = kfs;
      break;
    }
    case EnvSpec::Type::kScriptedSwitches:
      j["type"] = "scripted_switches";
      j["k"] = env.k;
      j["gap"] = env.gap;
      j["switches"] = env.switches;
      break;
  }
  return j;
}

json ConfigJson(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["horizon"] = c.horizon;
  if (c.env) j["env"] = EnvJson(*c.env);
  j["policy"] = PolicyJson(c.policy);
  j["seeds"] = {{"count", c.seed_count}, {"base", c.base_seed}};
  if (c.sweep) {
    json policies = json::array();
    for (const auto& p : c.sweep->policies) policies.push_back(PolicyJson(p));
    j["sweep"] = {{"k", c.sweep->k},
                  {"gap", c.sweep->gap},
                  {"switch_counts", c.sweep->switch_counts},
                  {"policies", policies}};
  }
  if (c.concentration) {
    const auto& o = *c.concentration;
    json cj = {{"k", o.k}, {"gap", o.gap}, {"trials", o.trials}, {"c1", o.c1}};
    if (o.matrix) cj["matrix"] = *o.matrix;
    j["concentration"] = cj;
  }
  return j;
}

std::string Hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

PreferenceMatrix MatrixFrom(const MatrixRows& rows) {
  return PreferenceMatrix::FromRows(rows);
}

void WriteManifest(const std::filesystem::path& out, const ExperimentConfig& config,
                   const std::string& command, std::vector<std::string> files) {
  std::sort(files.begin(), files.end());
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config_hash"] = ConfigHash(config);
  j["config"] = ConfigJson(config);
  j["files"] = files;
  WriteText(out / "manifest.json", Dump(j));
}

json MeasuresJson(const MeasureReport& r) {
  return {{"pref_switches", r.pref_switches},
          {"cw_switches", r.cw_switches},
          {"sig_cw_switches", r.sig_switches()},
          {"sig_switch_rounds", r.sig_switch_rounds},
          {"total_variation", r.total_variation},
          {"cw_variation", r.cw_variation},
          {"ordering_holds", r.OrderingHolds()}};
}

void Prepare(const std::filesystem::path& out) { std::filesystem::create_directories(out); }

}  // namespace

ExperimentConfig ParseConfig(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  CheckKeys(j, {"schema_version", "horizon", "env", "policy", "seeds", "output_dir", "jobs",
                "sweep", "concentration"},
            "config");
  ExperimentConfig c;
  c.schema_version = static_cast<int>(AsInt(Require(j, "schema_version", "config"),
                                            "schema_version"));
  if (c.schema_version != kSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));
  }
  c.horizon = AsInt(Require(j, "horizon", "config"), "horizon");
  if (c.horizon < 2) throw ConfigError("horizon must be >= 2");
  if (j.contains("env")) c.env = ParseEnv(j["env"]);
  if (j.contains("policy")) c.policy = ParsePolicy(j["policy"], "policy");
  if (j.contains("seeds")) {
    const json& s = j["seeds"];
    CheckKeys(s, {"count", "base"}, "seeds");
    if (s.contains("count")) c.seed_count = static_cast<int>(AsInt(s["count"], "seeds.count"));
    if (s.contains("base")) {
      if (!s["base"].is_number_unsigned()) throw ConfigError("seeds.base must be a non-negative integer");
      c.base_seed = s["base"].get<std::uint64_t>();
    }
    if (c.seed_count < 1) throw ConfigError("seeds.count must be >= 1");
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("output_dir must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("jobs")) {
    c.jobs = static_cast<int>(AsInt(j["jobs"], "jobs"));
    if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    CheckKeys(s, {"k", "gap", "switch_counts", "policies"}, "sweep");
    SweepOptions o;
    if (s.contains("k")) o.k = static_cast<int>(AsInt(s["k"], "sweep.k"));
    if (s.contains("gap")) o.gap = AsDouble(s["gap"], "sweep.gap");
    if (s.contains("switch_counts")) {
      if (!s["switch_counts"].is_array() || s["switch_counts"].empty()) {
        throw ConfigError("sweep.switch_counts must be a non-empty array");
      }
      o.switch_counts.clear();
      for (const auto& x : s["switch_counts"]) {
        o.switch_counts.push_back(static_cast<int>(AsInt(x, "sweep.switch_counts")));
      }
    }
    if (s.contains("policies")) {
      if (!s["policies"].is_array()) throw ConfigError("sweep.policies must be an array");
      for (const auto& p : s["policies"]) o.policies.push_back(ParsePolicy(p, "sweep.policies[]"));
    }
    c.sweep = o;
  }
  if (j.contains("concentration")) {
    const json& s = j["concentration"];
    CheckKeys(s, {"k", "gap", "matrix", "trials", "c1"}, "concentration");
    ConcentrationOptions o;
    if (s.contains("k")) o.k = static_cast<int>(AsInt(s["k"], "concentration.k"));
    if (s.contains("gap")) o.gap = AsDouble(s["gap"], "concentration.gap");
    if (s.contains("matrix")) o.matrix = AsMatrix(s["matrix"], "concentration.matrix");
    if (s.contains("trials")) o.trials = static_cast<int>(AsInt(s["trials"], "concentration.trials"));
    if (s.contains("c1")) o.c1 = AsDouble(s["c1"], "concentration.c1");
    if (o.trials < 1) throw ConfigError("concentration.trials must be >= 1");
    if (!(o.c1 >= 0.0)) throw ConfigError("concentration.c1 must be >= 0");
    c.concentration = o;
  }
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

std::string CanonicalConfig(const ExperimentConfig& config) {
  return ConfigJson(config).dump();
}

std::string ConfigHash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : CanonicalConfig(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return Hex64(h);
}

PreferenceSequence BuildEnv(const EnvSpec& env, Round horizon) {
  switch (env.type) {
    case EnvSpec::Type::kExplicit: {
      std::vector<PreferenceMatrix> ms;
      for (const auto& rows : env.matrices) ms.push_back(MatrixFrom(rows));
      return PreferenceSequence::ExplicitList(std::move(ms), horizon, env.repeat);
    }
    case EnvSpec::Type::kPiecewiseConstant: {
      std::vector<MatrixSegment> segs;
      for (std::size_t i = 0; i < env.matrices.size(); ++i) {
        segs.push_back({env.starts[i], MatrixFrom(env.matrices[i])});
      }
      return PreferenceSequence::PiecewiseConstant(std::move(segs), horizon);
    }
    case EnvSpec::Type::kUtilityDrift:
      return PreferenceSequence::UtilityDrift(UtilityModel(env.link, env.keyframes), horizon);
    case EnvSpec::Type::kScriptedSwitches:
      return PreferenceSequence::ScriptedSwitches(env.k, env.gap, env.switches, horizon);
  }
  throw ConfigError("unknown env type");
}

PreferenceSequence BuildEnv(const ExperimentConfig& config) {
  if (!config.env) throw ConfigError("config has no env section");
  return BuildEnv(*config.env, config.horizon);
}

std::string FormatDouble(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void WriteRunCsv(const std::filesystem::path& path, const RunRecord& record) {
  std::string s = "round,regret,cum_regret,episode,frame_depth\n";
  for (std::size_t i = 0; i < record.regret.size(); ++i) {
    s += std::to_string(i + 1);
    s += ',';
    s += FormatDouble(record.regret[i]);
    s += ',';
    s += FormatDouble(record.cumulative[i]);
    s += ',';
    s += std::to_string(record.episode[i]);
    s += ',';
    s += std::to_string(record.frame_depth[i]);
    s += '\n';
  }
  WriteText(path, s);
}

void WriteTraceCsv(const std::filesystem::path& path, const RunRecord& record) {
  std::string s = "t,a_t,b_t,o_t,active_size,frame_depth,episode\n";
  for (std::size_t i = 0; i < record.events.size(); ++i) {
    const DuelEvent& e = record.events[i];
    s += std::to_string(e.t) + ',' + std::to_string(e.first + 1) + ',' +
         std::to_string(e.second + 1) + ',' + std::to_string(e.outcome) + ',' +
         std::to_string(e.active_size) + ',' + std::to_string(record.frame_depth[i]) + ',' +
         std::to_string(record.episode[i]) + '\n';
  }
  WriteText(path, s);
}

std::vector<DuelEvent> ReadTraceCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("t,a_t,b_t,o_t,active_size", 0) != 0) {
    throw std::runtime_error("unexpected trace header in " + path.string());
  }
  std::vector<DuelEvent> events;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<long long> v;
    while (std::getline(ls, field, ',')) v.push_back(std::stoll(field));
    if (v.size() < 5) throw std::runtime_error("short trace row: " + line);
    events.push_back({v[0], static_cast<Arm>(v[1] - 1), static_cast<Arm>(v[2] - 1),
                      static_cast<int>(v[3]), static_cast<int>(v[4])});
  }
  return events;
}

std::string TraceSidecarJson(const PolicyTrace& trace) {
  json j;
  j["episode_starts"] = trace.episode_starts;
  json elims = json::array();
  for (const auto& e : trace.eliminations) {
    elims.push_back({{"round", e.round},
                     {"arm", e.arm + 1},
                     {"scope", e.scope == EliminationScope::kGood ? "good" : "active"},
                     {"frame", e.frame},
                     {"witness",
                      {{"a_prime", e.witness.a_prime + 1},
                       {"s1", e.witness.s1},
                       {"s2", e.witness.s2},
                       {"sum", e.witness.sum},
                       {"threshold", e.witness.threshold}}}});
  }
  j["eliminations"] = elims;
  json replays = json::array();
  for (const auto& r : trace.replays) {
    replays.push_back({{"id", r.id},
                       {"parent", r.parent},
                       {"episode", r.episode},
                       {"start", r.start},
                       {"duration", r.duration},
                       {"depth", r.depth}});
  }
  j["replays"] = replays;
  return Dump(j);
}

std::string MeasureReportJson(const MeasureReport& report) {
  return Dump(MeasuresJson(report));
}

RunSummary RunExperiment(const ExperimentConfig& config, const std::filesystem::path& out) {
  const PreferenceSequence env = BuildEnv(config);
  Prepare(out);
  RunSummary result;
  const auto n = static_cast<std::size_t>(config.seed_count);
  result.totals.assign(n, 0.0);
  std::vector<std::vector<std::string>> files(n);
  for (std::size_t i = 0; i < n; ++i) result.seeds.push_back(config.base_seed + i);
  ParallelFor(n, config.jobs, [&](std::size_t i) {
    const std::uint64_t seed = result.seeds[i];
    const RunRecord rec = RunSingle(env, config.policy, seed);
    const std::string stem = "seed_" + std::to_string(seed);
    WriteRunCsv(out / (stem + ".csv"), rec);
    WriteTraceCsv(out / (stem + "_trace.csv"), rec);
    files[i] = {stem + ".csv", stem + "_trace.csv"};
    if (rec.trace) {
      WriteText(out / (stem + "_trace.json"), TraceSidecarJson(*rec.trace));
      files[i].push_back(stem + "_trace.json");
    }
    result.totals[i] = rec.total();
  });
  if (n >= 2) result.summary = Summarize(result.totals);

  json s;
  s["config_hash"] = ConfigHash(config);
  s["policy"] = config.policy.Label();
  s["horizon"] = config.horizon;
  s["k"] = env.k();
  s["seeds"] = result.seeds;
  s["totals"] = result.totals;
  if (result.summary) {
    s["mean"] = result.summary->mean;
    s["stderr"] = result.summary->stderr_mean;
  }
  s["measures"] = MeasuresJson(ComputeMeasures(env));
  WriteText(out / "summary.json", Dump(s));

  std::vector<std::string> all{"summary.json"};
  for (auto& f : files) all.insert(all.end(), f.begin(), f.end());
  WriteManifest(out, config, "run", all);
  return result;
}

SweepResult SweepExperiment(const ExperimentConfig& config, const std::filesystem::path& out) {
  if (!config.sweep) throw ConfigError("config has no sweep section");
  if (config.seed_count < 2) throw ConfigError("a sweep needs seeds.count >= 2");
  const SweepOptions& o = *config.sweep;
  SweepSpec spec;
  spec.k = o.k;
  spec.gap = o.gap;
  spec.horizon = config.horizon;
  spec.switch_counts = o.switch_counts;
  spec.policies = o.policies.empty() ? std::vector<PolicySpec>{config.policy} : o.policies;
  spec.seeds = config.seed_count;
  spec.base_seed = config.base_seed;
  spec.jobs = config.jobs;
  // Build every environment once before any run starts.
  for (int s : spec.switch_counts) {
    (void)PreferenceSequence::ScriptedSwitches(spec.k, spec.gap, s, spec.horizon);
  }
  SweepResult result = RunSweep(spec);

  Prepare(out);
  json j;
  j["config_hash"] = ConfigHash(config);
  j["horizon"] = config.horizon;
  j["k"] = o.k;
  j["gap"] = o.gap;
  json cells = json::array();
  for (const auto& c : result.cells) {
    cells.push_back({{"policy", c.policy},
                     {"switches", c.switches},
                     {"mean", c.summary.mean},
                     {"stderr", c.summary.stderr_mean},
                     {"totals", c.totals}});
  }
  j["cells"] = cells;
  j["slopes"] = result.slopes;
  WriteText(out / "sweep.json", Dump(j));
  WriteManifest(out, config, "sweep", {"sweep.json"});
  return result;
}

ConcentrationResult ConcentrationExperiment(const ExperimentConfig& config,
                                            const std::filesystem::path& out) {
  if (!config.concentration) throw ConfigError("config has no concentration section");
  const ConcentrationOptions& o = *config.concentration;
  const PreferenceMatrix p =
      o.matrix ? MatrixFrom(*o.matrix)
               : PreferenceSequence::ScriptedSwitches(o.k, o.gap, 0, config.horizon).At(1);
  (void)CondorcetWinner(p);
  const ConcentrationResult r =
      ConcentrationSuite(p, config.horizon, o.trials, o.c1, config.base_seed, config.jobs);

  Prepare(out);
  json j;
  j["config_hash"] = ConfigHash(config);
  j["horizon"] = config.horizon;
  j["k"] = p.k();
  j["c1"] = o.c1;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["frequency"] = r.frequency();
  WriteText(out / "concentration.json", Dump(j));
  WriteManifest(out, config, "concentration", {"concentration.json"});
  return r;
}

MeasureReport MeasuresExperiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out) {
  const MeasureReport r = ComputeMeasures(BuildEnv(config));
  Prepare(out);
  WriteText(out / "measures.json", MeasureReportJson(r));
  WriteManifest(out, config, "measures", {"measures.json"});
  return r;
}

}  // namespace nsduel
