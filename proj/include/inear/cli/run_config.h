// cli/run_config.h

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

#ifndef INEAR_CLI_RUN_CONFIG_H_
#define INEAR_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inear/channel/scenario.h"
#include "inear/dataset/corpus.h"
#include "inear/enhance/aec.h"
#include "inear/enhance/gate.h"
#include "inear/eval/recognition.h"
#include "inear/events/events.h"

namespace inear::cli {

struct GateSettings {
  enhance::GateConfig config;
  /// Explicit compensation; otherwise derived from the profile per ANC state.
  std::optional<core::BandGainProfile> compensation;
  bool anc_on = true;  // ANC state assumed when nothing else says
};

struct EventsSettings {
  events::ComparatorConfig comparator;
  std::vector<events::RhythmPattern> patterns = {{"triple_tap", {0.3, 0.3}}};
  double heart_rate_window = 10.0;
};

struct CorpusSettings {
  std::string manifest;  // resolved against the config directory
  dataset::BcSimConfig bc_sim;
};

struct TranscriberSettings {
  enum class Kind { kMock, kHttp };
  Kind kind = Kind::kMock;
  bool echo_references = true;
  std::map<std::string, std::string> table;
  std::optional<double> no_speech_above_dba;
  eval::HttpConfig http;
};

struct EvalSettings {
  std::vector<eval::Pipeline> pipelines = {eval::Pipeline::kInner};
  int repetitions = 1;
  std::optional<eval::WerMode> wer_mode;  // per language when unset
  std::vector<std::pair<std::string, std::string>> comparisons;
};

struct RunConfig {
  core::CalibrationRef calibration;
  channel::ChannelProfile profile = channel::ChannelProfile::Default();
  std::vector<channel::ScenarioSpec> scenarios;
  GateSettings gate;
  enhance::AecConfig aec;
  EventsSettings events;
  CorpusSettings corpus;
  TranscriberSettings transcriber;
  EvalSettings eval;
  std::string output_dir = "out";
  uint64_t rng_seed = 0;
  int parallel = 1;

  /// Cross-field checks; throws ConfigError naming the field.
  void Validate() const;
};

/// Strict parse: unknown keys and out-of-range values throw ConfigError with
/// the JSON path of the field.  Relative paths resolve against base_dir.
RunConfig RunConfigFromJson(const json_util::Json &j, const std::string &base_dir);
RunConfig LoadRunConfig(const std::string &path);
json_util::OrderedJson RunConfigToJson(const RunConfig &c);

/// Keys accepted in each object of the config, keyed by section name ("" for
/// the top level).  Mirrors docs/run_config.schema.json.
const std::map<std::string, std::set<std::string>> &RunConfigKeys();

/// Scenarios with the run seed folded into each scenario seed.
std::vector<channel::ScenarioSpec> EffectiveScenarios(const RunConfig &c);

enhance::GateConfig GateFor(const RunConfig &c, bool anc_on);

}  // namespace inear::cli

#endif  // INEAR_CLI_RUN_CONFIG_H_
