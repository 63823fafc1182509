// cli/run_config.cc

// Copyright 2026  The inear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "inear/cli/run_config.h"

#include <filesystem>
#include <regex>

#include "inear/channel/generators.h"
#include "inear/core/wav.h"

namespace inear::cli {

namespace {

using json_util::Index;
using json_util::Join;
using json_util::Json;
using json_util::OrderedJson;

void CheckKeys(const Json &j, const std::string &section, const std::string &path) {
  json_util::RequireObject(j, path);
  const auto &allowed = RunConfigKeys().at(section);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(Join(path, it.key()), "unknown key");
}

std::string ResolvePath(const std::string &p, const std::string &base_dir) {
  if (p.empty() || base_dir.empty()) return p;
  const std::filesystem::path fp(p);
  if (fp.is_absolute()) return p;
  return (std::filesystem::path(base_dir) / fp).lexically_normal().string();
}

GateSettings GateFromJson(const Json &j, const std::string &path) {
  CheckKeys(j, "gate", path);
  GateSettings g;
  auto &c = g.config;
  c.dominance_margin = json_util::GetNumberOr(j, "dominance_margin", c.dominance_margin, path);
  c.floor_db = json_util::GetNumberOr(j, "floor_db", c.floor_db, path);
  c.hysteresis_db = json_util::GetNumberOr(j, "hysteresis_db", c.hysteresis_db, path);
  c.hold_frames = static_cast<int>(json_util::GetIntOr(j, "hold_frames", c.hold_frames, path));
  c.window_size = static_cast<int>(json_util::GetIntOr(j, "window_size", c.window_size, path));
  c.hop = static_cast<int>(json_util::GetIntOr(j, "hop", c.hop, path));
  g.anc_on = json_util::GetBoolOr(j, "anc_on", g.anc_on, path);
  if (j.contains("compensation"))
    g.compensation = channel::ProfileFromJson(j.at("compensation"), Join(path, "compensation"));
  c.Validate();
  return g;
}

OrderedJson GateToJson(const GateSettings &g) {
  OrderedJson j;
  j["dominance_margin"] = g.config.dominance_margin;
  j["floor_db"] = g.config.floor_db;
  j["hysteresis_db"] = g.config.hysteresis_db;
  j["hold_frames"] = g.config.hold_frames;
  j["window_size"] = g.config.window_size;
  j["hop"] = g.config.hop;
  j["anc_on"] = g.anc_on;
  if (g.compensation) j["compensation"] = channel::ProfileToJson(*g.compensation);
  return j;
}

enhance::AecConfig AecFromJson(const Json &j, const std::string &path) {
  CheckKeys(j, "aec", path);
  enhance::AecConfig c;
  c.taps = static_cast<int>(json_util::GetIntOr(j, "taps", c.taps, path));
  c.step = json_util::GetNumberOr(j, "step", c.step, path);
  c.regularization = json_util::GetNumberOr(j, "regularization", c.regularization, path);
  c.step_control = json_util::GetBoolOr(j, "step_control", c.step_control, path);
  c.smoothing = json_util::GetNumberOr(j, "smoothing", c.smoothing, path);
  c.Validate();
  return c;
}

OrderedJson AecToJson(const enhance::AecConfig &c) {
  OrderedJson j;
  j["taps"] = c.taps;
  j["step"] = c.step;
  j["regularization"] = c.regularization;
  j["step_control"] = c.step_control;
  j["smoothing"] = c.smoothing;
  return j;
}

EventsSettings EventsFromJson(const Json &j, const std::string &path) {
  CheckKeys(j, "events", path);
  EventsSettings e;
  if (j.contains("comparator"))
    e.comparator = events::ComparatorFromJson(j.at("comparator"), Join(path, "comparator"));
  if (j.contains("patterns")) {
    const auto &jp = j.at("patterns");
    const std::string pp = Join(path, "patterns");
    if (!jp.is_array()) throw ConfigError(pp, "expected an array");
    e.patterns.clear();
    for (std::size_t i = 0; i < jp.size(); ++i)
      e.patterns.push_back(events::PatternFromJson(jp[i], Index(pp, i)));
  }
  e.heart_rate_window =
      json_util::GetNumberOr(j, "heart_rate_window", e.heart_rate_window, path);
  return e;
}

CorpusSettings CorpusFromJson(const Json &j, const std::string &path,
                              const std::string &base_dir) {
  CheckKeys(j, "corpus", path);
  CorpusSettings c;
  c.manifest = ResolvePath(json_util::GetStringOr(j, "manifest", "", path), base_dir);
  if (j.contains("bc_sim"))
    c.bc_sim = dataset::BcSimConfigFromJson(j.at("bc_sim"), Join(path, "bc_sim"));
  return c;
}

TranscriberSettings TranscriberFromJson(const Json &j, const std::string &path) {
  CheckKeys(j, "transcriber", path);
  TranscriberSettings t;
  const std::string type = json_util::GetStringOr(j, "type", "mock", path);
  if (type == "mock") {
    t.kind = TranscriberSettings::Kind::kMock;
  } else if (type == "http") {
    t.kind = TranscriberSettings::Kind::kHttp;
  } else {
    throw ConfigError(Join(path, "type"), "expected \"mock\" or \"http\", got \"" + type + "\"");
  }
  auto &h = t.http;
  h.endpoint = json_util::GetStringOr(j, "endpoint", "", path);
  h.retries = static_cast<int>(json_util::GetIntOr(j, "retries", h.retries, path));
  h.timeout_s = json_util::GetNumberOr(j, "timeout", h.timeout_s, path);
  h.backoff_s = json_util::GetNumberOr(j, "backoff", h.backoff_s, path);
  h.auth_header = json_util::GetStringOr(j, "auth_header", h.auth_header, path);
  h.token_env = json_util::GetStringOr(j, "token_env", h.token_env, path);
  if (j.contains("mock")) {
    const auto &jm = j.at("mock");
    const std::string mp = Join(path, "mock");
    CheckKeys(jm, "transcriber.mock", mp);
    t.echo_references = json_util::GetBoolOr(jm, "echo_references", t.echo_references, mp);
    if (jm.contains("no_speech_above_dba"))
      t.no_speech_above_dba = json_util::GetNumber(jm, "no_speech_above_dba", mp);
    if (jm.contains("table")) {
      const auto &jt = jm.at("table");
      const std::string tp = Join(mp, "table");
      json_util::RequireObject(jt, tp);
      for (auto it = jt.begin(); it != jt.end(); ++it) {
        if (!it.value().is_string())
          throw ConfigError(Join(tp, it.key()), "expected a string");
        t.table[it.key()] = it.value().get<std::string>();
      }
    }
  }
  return t;
}

OrderedJson TranscriberToJson(const TranscriberSettings &t) {
  OrderedJson j;
  j["type"] = t.kind == TranscriberSettings::Kind::kHttp ? "http" : "mock";
  j["endpoint"] = t.http.endpoint;
  j["retries"] = t.http.retries;
  j["timeout"] = t.http.timeout_s;
  j["backoff"] = t.http.backoff_s;
  j["auth_header"] = t.http.auth_header;
  j["token_env"] = t.http.token_env;
  OrderedJson m;
  m["echo_references"] = t.echo_references;
  if (t.no_speech_above_dba) m["no_speech_above_dba"] = *t.no_speech_above_dba;
  OrderedJson table = OrderedJson::object();
  for (const auto &[k, v] : t.table) table[k] = v;
  m["table"] = table;
  j["mock"] = m;
  return j;
}

EvalSettings EvalFromJson(const Json &j, const std::string &path) {
  CheckKeys(j, "eval", path);
  EvalSettings e;
  if (j.contains("pipelines")) {
    const auto &jp = j.at("pipelines");
    const std::string pp = Join(path, "pipelines");
    if (!jp.is_array()) throw ConfigError(pp, "expected an array");
    e.pipelines.clear();
    for (std::size_t i = 0; i < jp.size(); ++i) {
      if (!jp[i].is_string()) throw ConfigError(Index(pp, i), "expected a string");
      try {
        e.pipelines.push_back(eval::ParsePipeline(jp[i].get<std::string>()));
      } catch (const InvalidArgument &err) {
        throw ConfigError(Index(pp, i), err.what());
      }
    }
  }
  e.repetitions = static_cast<int>(json_util::GetIntOr(j, "repetitions", e.repetitions, path));
  const std::string mode = json_util::GetStringOr(j, "wer_mode", "auto", path);
  if (mode != "auto") {
    try {
      e.wer_mode = eval::ParseWerMode(mode);
    } catch (const InvalidArgument &err) {
      throw ConfigError(Join(path, "wer_mode"), err.what());
    }
  }
  if (j.contains("comparisons")) {
    const auto &jc = j.at("comparisons");
    const std::string cp = Join(path, "comparisons");
    if (!jc.is_array()) throw ConfigError(cp, "expected an array");
    for (std::size_t i = 0; i < jc.size(); ++i) {
      const auto &pair = jc[i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_string())
        throw ConfigError(Index(cp, i), "expected [scenario_a, scenario_b]");
      e.comparisons.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  return e;
}

OrderedJson EvalToJson(const EvalSettings &e) {
  OrderedJson j;
  auto jp = OrderedJson::array();
  for (auto p : e.pipelines) jp.push_back(eval::PipelineName(p));
  j["pipelines"] = jp;
  j["repetitions"] = e.repetitions;
  j["wer_mode"] = e.wer_mode ? eval::WerModeName(*e.wer_mode) : "auto";
  auto jc = OrderedJson::array();
  for (const auto &[a, b] : e.comparisons) jc.push_back({a, b});
  j["comparisons"] = jc;
  return j;
}

}  // namespace

const std::map<std::string, std::set<std::string>> &RunConfigKeys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"",
       {"calibration", "profile", "scenarios", "gate", "aec", "events", "corpus",
        "transcriber", "eval", "output_dir", "rng_seed", "parallel"}},
      {"calibration", {"full_scale_spl"}},
      {"gate",
       {"dominance_margin", "floor_db", "hysteresis_db", "hold_frames", "window_size",
        "hop", "anc_on", "compensation"}},
      {"aec", {"taps", "step", "regularization", "step_control", "smoothing"}},
      {"events", {"comparator", "patterns", "heart_rate_window"}},
      {"corpus", {"manifest", "bc_sim"}},
      {"transcriber",
       {"type", "endpoint", "retries", "timeout", "backoff", "auth_header", "token_env",
        "mock"}},
      {"transcriber.mock", {"echo_references", "no_speech_above_dba", "table"}},
      {"eval", {"pipelines", "repetitions", "wer_mode", "comparisons"}},
  };
  return keys;
}

void RunConfig::Validate() const {
  if (!(calibration.full_scale_spl > 0 && calibration.full_scale_spl < 200))
    throw ConfigError("calibration.full_scale_spl", "must be in (0, 200)");
  profile.Validate();
  static const std::regex kName(R"(^[A-Za-z0-9_.-]+$)");
  std::set<std::string> names;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const std::string path = Index("scenarios", i);
    scenarios[i].Validate(path);
    if (!std::regex_match(scenarios[i].name, kName))
      throw ConfigError(Join(path, "name"),
                        "must be non-empty and use only letters, digits, '_', '-', '.'");
    if (!names.insert(scenarios[i].name).second)
      throw ConfigError(Join(path, "name"),
                        "duplicate scenario name \"" + scenarios[i].name + "\"");
  }
  events.comparator.Validate();
  for (std::size_t i = 0; i < events.patterns.size(); ++i) {
    try {
      events.patterns[i].Validate(events.comparator.refractory);
    } catch (const ConfigError &e) {
      throw ConfigError(Index("events.patterns", i), e.what());
    }
  }
  if (!(events.heart_rate_window >= 5))
    throw ConfigError("events.heart_rate_window", "must be >= 5 s");
  corpus.bc_sim.Validate(0, "corpus.bc_sim");
  if (transcriber.http.retries < 0)
    throw ConfigError("transcriber.retries", "must be >= 0");
  if (!(transcriber.http.timeout_s > 0))
    throw ConfigError("transcriber.timeout", "must be > 0");
  if (!(transcriber.http.backoff_s >= 0))
    throw ConfigError("transcriber.backoff", "must be >= 0");
  if (!transcriber.http.endpoint.empty()) transcriber.http.Validate("transcriber");
  if (eval.pipelines.empty()) throw ConfigError("eval.pipelines", "must be non-empty");
  if (eval.repetitions < 1) throw ConfigError("eval.repetitions", "must be >= 1");
  for (std::size_t i = 0; i < eval.comparisons.size(); ++i)
    for (const auto &n : {eval.comparisons[i].first, eval.comparisons[i].second})
      if (!names.count(n))
        throw ConfigError(Index("eval.comparisons", i), "unknown scenario \"" + n + "\"");
  if (output_dir.empty()) throw ConfigError("output_dir", "must be non-empty");
  if (parallel < 1) throw ConfigError("parallel", "must be >= 1");
}

RunConfig RunConfigFromJson(const Json &j, const std::string &base_dir) {
  CheckKeys(j, "", "");
  RunConfig c;
  if (j.contains("calibration")) {
    const auto &jc = j.at("calibration");
    CheckKeys(jc, "calibration", "calibration");
    c.calibration.full_scale_spl = json_util::GetNumberOr(
        jc, "full_scale_spl", c.calibration.full_scale_spl, "calibration");
  }
  if (j.contains("profile"))
    c.profile = channel::ChannelProfileFromJson(j.at("profile"), c.profile, "profile");
  if (j.contains("scenarios")) {
    const auto &js = j.at("scenarios");
    if (!js.is_array()) throw ConfigError("scenarios", "expected an array");
    for (std::size_t i = 0; i < js.size(); ++i) {
      auto s = channel::ScenarioFromJson(js[i], Index("scenarios", i), base_dir);
      if (s.name.empty()) s.name = "scenario" + std::to_string(i);
      c.scenarios.push_back(std::move(s));
    }
  }
  if (j.contains("gate")) c.gate = GateFromJson(j.at("gate"), "gate");
  if (j.contains("aec")) c.aec = AecFromJson(j.at("aec"), "aec");
  if (j.contains("events")) c.events = EventsFromJson(j.at("events"), "events");
  if (j.contains("corpus")) c.corpus = CorpusFromJson(j.at("corpus"), "corpus", base_dir);
  if (j.contains("transcriber"))
    c.transcriber = TranscriberFromJson(j.at("transcriber"), "transcriber");
  if (j.contains("eval")) c.eval = EvalFromJson(j.at("eval"), "eval");
  c.output_dir = ResolvePath(json_util::GetStringOr(j, "output_dir", c.output_dir, ""),
                             base_dir);
  c.rng_seed = json_util::GetSeedOr(j, "rng_seed", c.rng_seed, "");
  c.parallel = static_cast<int>(json_util::GetIntOr(j, "parallel", c.parallel, ""));
  c.Validate();
  return c;
}

RunConfig LoadRunConfig(const std::string &path) {
  const std::string text = core::ReadFileBytes(path);
  const auto dir = std::filesystem::path(path).parent_path();
  return RunConfigFromJson(json_util::Parse(text, path), dir.empty() ? "." : dir.string());
}

OrderedJson RunConfigToJson(const RunConfig &c) {
  OrderedJson j;
  j["calibration"] = {{"full_scale_spl", c.calibration.full_scale_spl}};
  j["profile"] = channel::ChannelProfileToJson(c.profile);
  auto js = OrderedJson::array();
  for (const auto &s : c.scenarios) js.push_back(channel::ScenarioToJson(s));
  j["scenarios"] = js;
  j["gate"] = GateToJson(c.gate);
  j["aec"] = AecToJson(c.aec);
  OrderedJson je;
  je["comparator"] = events::ComparatorToJson(c.events.comparator);
  auto jp = OrderedJson::array();
  for (const auto &p : c.events.patterns) jp.push_back(events::PatternToJson(p));
  je["patterns"] = jp;
  je["heart_rate_window"] = c.events.heart_rate_window;
  j["events"] = je;
  j["corpus"] = {{"manifest", c.corpus.manifest},
                 {"bc_sim", dataset::BcSimConfigToJson(c.corpus.bc_sim)}};
  j["transcriber"] = TranscriberToJson(c.transcriber);
  j["eval"] = EvalToJson(c.eval);
  j["output_dir"] = c.output_dir;
  j["rng_seed"] = c.rng_seed;
  j["parallel"] = c.parallel;
  return j;
}

std::vector<channel::ScenarioSpec> EffectiveScenarios(const RunConfig &c) {
  auto out = c.scenarios;
  for (auto &s : out) s.rng_seed = channel::DeriveSeed(c.rng_seed, s.rng_seed);
  return out;
}

enhance::GateConfig GateFor(const RunConfig &c, bool anc_on) {
  enhance::GateConfig g = c.gate.config;
  g.compensation = c.gate.compensation
                       ? *c.gate.compensation
                       : enhance::GateConfig::CompensationFor(c.profile, anc_on);
  return g;
}

}  // namespace inear::cli
