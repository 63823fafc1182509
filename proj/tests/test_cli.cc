// tests/test_cli.cc

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

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.h"
#include "inear/cli/commands.h"
#include "inear/core/wav.h"

namespace fs = std::filesystem;
using inear::cli::Main;
using inear::cli::RunConfig;
using inear::cli::RunConfigFromJson;
using inear::cli::RunConfigToJson;
using inear::json_util::Json;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult Run(std::vector<std::string> args) {
  args.insert(args.begin(), "inear");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path &p) { return inear::core::ReadFileBytes(p.string()); }

Json BaseConfig() {
  return Json::parse(R"({
    "scenarios": [
      {"name": "quiet", "whisper_level": 40, "noise_level": 33, "anc_on": false,
       "duration": 1.5, "rng_seed": 1},
      {"name": "n80", "whisper_level": 40, "noise_level": 80, "anc_on": true,
       "duration": 1.5, "rng_seed": 2}
    ],
    "eval": {"pipelines": ["inner", "gate"], "comparisons": [["n80", "quiet"]]},
    "rng_seed": 11
  })");
}

fs::path WriteConfig(const fs::path &dir, const Json &j) {
  const auto p = dir / "config.json";
  inear::core::WriteFileBytes(p.string(), j.dump(2));
  return p;
}

std::string ConfigErrorField(const Json &j) {
  try {
    RunConfigFromJson(j, "");
  } catch (const inear::ConfigError &e) {
    return e.field();
  }
  return "";
}

/// Every regular file under dir except run_metadata.json, relative path -> bytes.
std::map<std::string, std::string> Artifacts(const fs::path &dir) {
  std::map<std::string, std::string> out;
  for (const auto &e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().filename() == "run_metadata.json") continue;
    out[fs::relative(e.path(), dir).string()] = Slurp(e.path());
  }
  return out;
}

}  // namespace

TEST_CASE("run config: defaults and resolved config round-trip") {
  const RunConfig d = RunConfigFromJson(Json::object(), "");
  CHECK(d.parallel == 1);
  CHECK(d.rng_seed == 0);
  CHECK(d.transcriber.kind == inear::cli::TranscriberSettings::Kind::kMock);
  CHECK(d.events.comparator.k == doctest::Approx(2.5));

  const RunConfig c = RunConfigFromJson(BaseConfig(), "");
  const auto dumped = RunConfigToJson(c).dump();
  const RunConfig again = RunConfigFromJson(Json::parse(dumped), "");
  CHECK(RunConfigToJson(again).dump() == dumped);
}

TEST_CASE("run config: unknown keys are rejected with their path") {
  auto with = [](const std::string &patch) {
    Json j = BaseConfig();
    j.merge_patch(Json::parse(patch));
    return j;
  };
  CHECK(ConfigErrorField(with(R"({"bogus": 1})")) == "bogus");
  CHECK(ConfigErrorField(with(R"({"eval": {"wer": "token"}})")) == "eval.wer");
  CHECK(ConfigErrorField(with(R"({"transcriber": {"mock": {"x": 1}}})")) ==
        "transcriber.mock.x");
  CHECK(ConfigErrorField(with(R"({"gate": {"floor": -30}})")) == "gate.floor");
  Json j = BaseConfig();
  j["scenarios"][1]["noise"] = 80;
  CHECK(ConfigErrorField(j) == "scenarios[1].noise");
}

TEST_CASE("run config: out-of-range and inconsistent values") {
  auto field = [](const std::string &patch) {
    Json j = BaseConfig();
    j.merge_patch(Json::parse(patch));
    return ConfigErrorField(j);
  };
  CHECK(field(R"({"parallel": 0})") == "parallel");
  CHECK(field(R"({"aec": {"step": 2.0}})") == "aec.step");
  CHECK(field(R"({"eval": {"repetitions": 0}})") == "eval.repetitions");
  CHECK(field(R"({"eval": {"pipelines": ["inner", "wiener"]}})") == "eval.pipelines[1]");
  CHECK(field(R"({"eval": {"wer_mode": "phoneme"}})") == "eval.wer_mode");
  CHECK(field(R"({"eval": {"comparisons": [["n80", "n90"]]}})") == "eval.comparisons[0]");
  CHECK(field(R"({"events": {"heart_rate_window": 3}})") == "events.heart_rate_window");
  CHECK(field(R"({"transcriber": {"type": "grpc"}})") == "transcriber.type");
  CHECK(field(R"({"transcriber": {"endpoint": "ftp://x/y"}})") == "transcriber.endpoint");
  CHECK(field(R"({"calibration": {"full_scale_spl": -1}})") == "calibration.full_scale_spl");
  CHECK(field(R"({"rng_seed": -4})") == "rng_seed");

  Json dup = BaseConfig();
  dup["scenarios"][1]["name"] = "quiet";
  CHECK(ConfigErrorField(dup) == "scenarios[1].name");
  Json slash = BaseConfig();
  slash["scenarios"][0]["name"] = "a/b";
  CHECK(ConfigErrorField(slash) == "scenarios[0].name");
}

TEST_CASE("run config: published schema lists exactly the accepted keys") {
  const auto schema = inear::json_util::Parse(
      Slurp(fs::path(INEAR_SOURCE_DIR) / "docs" / "run_config.schema.json"), "schema");
  CHECK(schema.at("additionalProperties") == false);
  for (const auto &[section, keys] : inear::cli::RunConfigKeys()) {
    CAPTURE(section);
    const Json *node = &schema;
    std::string rest = section;
    while (!rest.empty()) {
      const auto dot = rest.find('.');
      node = &node->at("properties").at(rest.substr(0, dot));
      rest = dot == std::string::npos ? "" : rest.substr(dot + 1);
    }
    CHECK(node->at("additionalProperties") == false);
    std::set<std::string> published;
    for (auto it = node->at("properties").begin(); it != node->at("properties").end(); ++it)
      published.insert(it.key());
    CHECK(published == keys);
  }
}

TEST_CASE("cli: simulate then eval writes reports and run records") {
  const inear::testing::ScopedDir scoped("cli_eval");
  const auto &dir = scoped.path;
  const auto cfg = WriteConfig(dir, BaseConfig());
  const auto out = dir / "out";
  auto r = Run({"simulate", "--config", cfg.string(), "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out / "simulate" / "quiet.wav"));
  CHECK(fs::exists(out / "simulate" / "n80.json"));
  const auto wav = inear::core::ReadWav((out / "simulate" / "n80.wav").string());
  CHECK(wav.channel_count() == 2);
  CHECK(wav.duration() == doctest::Approx(1.5));

  r = Run({"eval", "-c", cfg.string(), "-o", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const auto report = Json::parse(Slurp(out / "eval" / "snr_report.json"));
  CHECK(report.at("conditions").size() == 2);
  CHECK(report.at("comparisons").size() == 1);
  CHECK(Slurp(out / "eval" / "spectra.csv").rfind(
            "band_hz_low,band_hz_high,condition,level_db\n", 0) == 0);
  CHECK_FALSE(fs::exists(out / "eval" / "wer.csv"));

  // The resolved config feeds back unchanged; timestamps live only in metadata.
  const auto resolved = out / "eval" / "resolved_config.json";
  const RunConfig reloaded = inear::cli::LoadRunConfig(resolved.string());
  CHECK(inear::json_util::Dump(RunConfigToJson(reloaded)) == Slurp(resolved));
  CHECK(Slurp(resolved).find("timestamp") == std::string::npos);
  const auto meta = Json::parse(Slurp(out / "eval" / "run_metadata.json"));
  CHECK(meta.at("command") == "eval");
  CHECK(meta.at("timestamp_utc").get<std::string>().size() == 20);
  CHECK(meta.at("resolved_config_sha256").get<std::string>().size() == 64);
}

TEST_CASE("cli: identical seeds give byte-identical artifacts, parallelism does not matter") {
  const inear::testing::ScopedDir scoped("cli_det");
  const auto &dir = scoped.path;
  const auto cfg = WriteConfig(dir, BaseConfig());
  for (const auto &[name, jobs] : {std::pair<std::string, std::string>{"a", "1"},
                                   {"b", "3"}}) {
    for (const char *cmd : {"simulate", "eval"})
      REQUIRE(Run({cmd, "-c", cfg.string(), "-o", (dir / name).string(), "-j", jobs}).code ==
              0);
  }
  const auto a = Artifacts(dir / "a");
  auto b = Artifacts(dir / "b");
  CHECK(a.size() == b.size());
  for (const auto &[path, bytes] : a) {
    CAPTURE(path);
    if (path.find("resolved_config.json") != std::string::npos) continue;  // parallel differs
    CHECK(b[path] == bytes);
  }

  REQUIRE(Run({"simulate", "-c", cfg.string(), "-o", (dir / "c").string(), "--seed", "12"})
              .code == 0);
  CHECK(Slurp(dir / "c" / "simulate" / "n80.wav") != a.at("simulate/n80.wav"));
}

TEST_CASE("cli: exit codes") {
  const inear::testing::ScopedDir scoped("cli_exit");
  const auto &dir = scoped.path;
  CHECK(Run({"simulate", "-c", (dir / "missing.json").string()}).code == 3);

  inear::core::WriteFileBytes((dir / "broken.json").string(), "{\"scenarios\": [");
  CHECK(Run({"simulate", "-c", (dir / "broken.json").string()}).code == 2);

  Json j = BaseConfig();
  j["gate"] = {{"hold", 3}};
  const auto bad = WriteConfig(dir, j);
  const auto r = Run({"eval", "-c", bad.string(), "-o", (dir / "out").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("gate.hold") != std::string::npos);

  CHECK(Run({"frobnicate"}).code == 2);
  CHECK(Run({}).code == 2);
  CHECK(Run({"--help"}).code == 0);
  CHECK(Run({"simulate", "-o", (dir / "o2").string()}).code == 2);  // no scenarios
  CHECK(Run({"simulate", "--transcriber", "grpc"}).code == 2);

  const auto mono = dir / "mono.wav";
  inear::core::WriteWav(mono.string(), inear::core::AudioBuffer::Zeros(1600, 16000));
  CHECK(Run({"enhance", mono.string(), "-o", (dir / "o3").string()}).code == 2);
  CHECK(Run({"enhance", (dir / "nope.wav").string(), "-o", (dir / "o3").string()}).code == 3);
}

TEST_CASE("cli: enhance uses the sidecar to report the SNR gain") {
  const inear::testing::ScopedDir scoped("cli_enh");
  const auto &dir = scoped.path;
  const auto cfg = WriteConfig(dir, BaseConfig());
  const auto out = dir / "out";
  REQUIRE(Run({"simulate", "-c", cfg.string(), "-o", out.string()}).code == 0);
  const auto input = (out / "simulate" / "n80.wav").string();
  auto r = Run({"enhance", input, "-c", cfg.string(), "-o", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const auto report = Json::parse(Slurp(out / "enhance" / "n80.report.json"));
  CHECK(report.at("anc_on") == true);
  CHECK(report.at("snr_gain_db").get<double>() > 10.0);
  const auto enhanced = inear::core::ReadWav((out / "enhance" / "n80.enhanced.wav").string());
  CHECK(enhanced.channel_count() == 1);
  CHECK(Slurp(out / "enhance" / "n80.mask.csv").rfind("frame_index,band_hz,gain_db\n", 0) ==
        0);

  // A different channel profile cannot reproduce the capture.
  Json other = BaseConfig();
  other["profile"] = {{"echo_gain_db", -20.0}, {"anc_residual", {{100, -25}, {1000, -25}}}};
  const auto cfg2 = dir / "other.json";
  inear::core::WriteFileBytes(cfg2.string(), other.dump());
  r = Run({"enhance", input, "-c", cfg2.string(), "-o", (dir / "out2").string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("does not reproduce") != std::string::npos);
  const auto report2 = Json::parse(Slurp(dir / "out2" / "enhance" / "n80.report.json"));
  CHECK(report2.at("snr_gain_db").is_null());
}

TEST_CASE("cli: events finds simulated taps; silence gives empty tables") {
  const inear::testing::ScopedDir scoped("cli_events");
  const auto &dir = scoped.path;
  Json j = Json::parse(R"({
    "scenarios": [
      {"name": "taps", "whisper_source": "silent", "noise_level": 30, "duration": 4,
       "rng_seed": 5, "events": {"onsets": [1.0, 1.3, 1.6]}}
    ],
    "events": {"comparator": {"floor": 1e-4}}})");
  const auto cfg = WriteConfig(dir, j);
  const auto out = dir / "out";
  REQUIRE(Run({"simulate", "-c", cfg.string(), "-o", out.string()}).code == 0);
  auto r = Run({"events", (out / "simulate" / "taps.wav").string(), "-c", cfg.string(), "-o",
                out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("heart-rate window") != std::string::npos);
  std::istringstream onsets(Slurp(out / "events" / "taps.onsets.csv"));
  std::string line;
  std::getline(onsets, line);
  CHECK(line == "time_s,amplitude");
  std::vector<int> hits(3, 0);
  while (std::getline(onsets, line)) {
    const double t = std::stod(line.substr(0, line.find(',')));
    for (int k = 0; k < 3; ++k) hits[k] += std::abs(t - (1.0 + 0.3 * k)) < 0.02;
  }
  CHECK(hits == std::vector<int>{1, 1, 1});
  std::istringstream matches(Slurp(out / "events" / "taps.matches.csv"));
  std::getline(matches, line);
  REQUIRE(std::getline(matches, line));
  CHECK(std::stod(line) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(line.find("triple_tap") != std::string::npos);
  CHECK(Slurp(out / "events" / "taps.pulse.csv") == "bpm,confidence\n");

  const auto silence = dir / "silence.wav";
  inear::core::WriteWav(silence.string(), inear::core::AudioBuffer::Zeros(16000 * 12, 16000));
  REQUIRE(Run({"events", silence.string(), "-o", out.string()}).code == 0);
  CHECK(Slurp(out / "events" / "silence.onsets.csv") == "time_s,amplitude\n");
  CHECK(Slurp(out / "events" / "silence.matches.csv") == "match_start_s,match_end_s,pattern\n");
  CHECK(Slurp(out / "events" / "silence.pulse.csv") == "bpm,confidence\n");
}

TEST_CASE("cli: bcfilter itemizes missing files and still succeeds") {
  const inear::testing::ScopedDir scoped("cli_bc");
  const auto &dir = scoped.path;
  const auto manifest = inear::testing::WriteWhisperCorpus(dir / "corpus", 3);
  fs::remove(dir / "corpus" / "audio" / "p1.wav");
  const auto out = dir / "out";
  const auto r = Run({"bcfilter", manifest, "-o", out.string(), "-j", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("2 written, 1 failed") != std::string::npos);
  CHECK(r.err.find("audio/p1.wav") != std::string::npos);
  CHECK(fs::exists(out / "bcfilter" / "audio" / "p0.wav"));
  CHECK(fs::exists(out / "bcfilter" / "report.json"));
  CHECK(Run({"bcfilter", "-o", out.string()}).code == 2);  // no manifest anywhere
}

TEST_CASE("cli: eval runs recognition through the mock or reports transport trouble") {
  const inear::testing::ScopedDir scoped("cli_wer");
  const auto &dir = scoped.path;
  const auto manifest = inear::testing::WriteWhisperCorpus(dir / "corpus", 3, 0.5);
  Json j = BaseConfig();
  j["corpus"] = {{"manifest", manifest}};
  j["transcriber"] = {{"mock", {{"no_speech_above_dba", 70}}}};
  const auto cfg = WriteConfig(dir, j);
  const auto out = dir / "out";
  auto r = Run({"eval", "-c", cfg.string(), "-o", out.string(), "-j", "2"});
  REQUIRE(r.code == 0);
  const auto csv = Slurp(out / "eval" / "wer.csv");
  CHECK(csv.rfind("phrase_id,noise_dba,anc,pipeline,wer,vad_failure\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 2 * 2);
  const auto report = Json::parse(Slurp(out / "eval" / "wer_report.json"));
  CHECK(report.at("vad_failures") == 6);  // n80 is above the no-speech level
  for (const auto &c : report.at("conditions")) {
    if (c.at("scenario") == "quiet") CHECK(c.at("wer").get<double>() == 0.0);
    if (c.at("scenario") == "n80") CHECK(c.at("wer").get<double>() == 1.0);
  }

  r = Run({"eval", "-c", cfg.string(), "-o", (dir / "h1").string(), "--transcriber", "http"});
  CHECK(r.code == 0);
  CHECK(r.err.find("endpoint is not set") != std::string::npos);

  Json quick = j;
  quick["transcriber"] = {{"type", "http"}, {"retries", 0}, {"timeout", 1}, {"backoff", 0}};
  const auto cfg2 = dir / "http.json";
  inear::core::WriteFileBytes(cfg2.string(), quick.dump());
  r = Run({"eval", "-c", cfg2.string(), "-o", (dir / "h2").string(), "--endpoint",
           "http://127.0.0.1:1/v1/transcribe"});
  CHECK(r.code == 0);
  CHECK(r.err.find("transcribe failed") != std::string::npos);
  CHECK(r.err.find("more recognition failures not shown") != std::string::npos);
  const auto failed = Json::parse(Slurp(dir / "h2" / "eval" / "wer_report.json"));
  CHECK(failed.at("failures").size() == 12);
  CHECK(failed.at("rows").empty());
}
