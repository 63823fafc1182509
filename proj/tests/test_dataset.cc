// tests/test_dataset.cc

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

#include "doctest.h"
#include "inear/channel/generators.h"
#include "inear/core/wav.h"
#include "inear/dataset/corpus.h"
#include "inear/error.h"
#include "inear/eval/band_levels.h"
#include "fixtures.h"
#include "test_util.h"

using inear::core::AudioBuffer;
using namespace inear::dataset;
namespace fs = std::filesystem;

namespace {

using inear::testing::TempDir;

double FullLevel(const AudioBuffer &b) {
  return inear::core::MeanSquareToDb(inear::core::MeanSquare(b.samples()), {});
}

// Bilinear Butterworth magnitude in dB at 16 kHz.
double ButterworthDb(double f, double fc, int order) {
  const double r = std::tan(M_PI * f / 16000) / std::tan(M_PI * fc / 16000);
  return -10.0 * std::log10(1.0 + std::pow(r, 2.0 * order));
}

std::string Line(const std::string &path, const std::string &text,
                 const std::string &lang = "ja") {
  return R"({"audio_path": ")" + path + R"(", "transcript": ")" + text +
         R"(", "language_tag": ")" + lang + "\"}\n";
}

}  // namespace

TEST_CASE("manifest parsing") {
  SUBCASE("empty") {
    auto m = ParseManifest("", "/x");
    CHECK(m.entries.empty());
    CHECK(ParseManifest("\n  \n", "/x").entries.empty());
  }
  SUBCASE("duplicate audio_path names the duplicate") {
    try {
      ParseManifest(Line("a.wav", "x") + Line("b.wav", "y") + Line("a.wav", "z"), "");
      FAIL("expected ConfigError");
    } catch (const inear::ConfigError &e) {
      CHECK(std::string(e.what()).find("a.wav") != std::string::npos);
      CHECK(e.field() == "manifest:line 3.audio_path");
    }
  }
  SUBCASE("fifteen phrases round trip verbatim") {
    const char *phrases[] = {"おはようございます", "こんにちは", "こんばんは",
                             "ありがとうございます", "すみません", "お願いします",
                             "はい", "いいえ", "わかりました", "大丈夫です",
                             "ちょっと待ってください", "もう一度お願いします",
                             "どうぞ", "失礼します", "さようなら"};
    std::string text;
    for (int i = 0; i < 15; ++i)
      text += Line("p" + std::to_string(i) + ".wav", phrases[i]);
    auto m = ParseManifest(text, "");
    REQUIRE(m.entries.size() == 15);
    CHECK(m.entries[9].transcript == "大丈夫です");
    CHECK(ManifestToJsonl(m) == ManifestToJsonl(ParseManifest(ManifestToJsonl(m), "")));
    CHECK(ParseManifest(ManifestToJsonl(m), "").entries[14].transcript == "さようなら");
  }
  SUBCASE("errors carry line context") {
    CHECK_THROWS_WITH_AS(ParseManifest(Line("a.wav", "x") + "{oops\n", ""),
                         doctest::Contains("manifest:line 2"), inear::ConfigError);
    CHECK_THROWS_WITH_AS(ParseManifest(Line("a.wav", "  "), ""),
                         doctest::Contains("transcript"), inear::ConfigError);
    CHECK_THROWS_WITH_AS(
        ParseManifest(R"({"audio_path":"a","transcript":"t","language_tag":"en","x":1})", ""),
        doctest::Contains("unknown key"), inear::ConfigError);
    CHECK_THROWS_AS(ParseManifest(R"({"audio_path":"a","transcript":"t"})", ""),
                    inear::ConfigError);
  }
  SUBCASE("speaker id optional") {
    auto m = ParseManifest(
        R"({"audio_path":"a","transcript":"t","language_tag":"en","speaker_id":"s1"})", "");
    REQUIRE(m.entries[0].speaker_id);
    CHECK(*m.entries[0].speaker_id == "s1");
  }
}

TEST_CASE("load_manifest resolves paths and itemizes missing audio") {
  const fs::path dir = TempDir("manifest");
  fs::create_directories(dir / "audio");
  inear::core::WriteWav((dir / "audio" / "a.wav").string(),
                        inear::testing::Sine(1000, 0.1, 0.1));
  inear::core::WriteFileBytes((dir / "m.jsonl").string(),
                              Line("audio/a.wav", "x") + "\n" + Line("audio/b.wav", "y"));
  auto m = LoadManifest((dir / "m.jsonl").string());
  CHECK(m.entries.size() == 2);
  REQUIRE(m.missing.size() == 1);
  CHECK(m.missing[0].audio_path == "audio/b.wav");
  CHECK(m.missing[0].line == 3);
  CHECK(fs::path(m.Resolve(m.entries[0])) == dir / "audio" / "a.wav");
  CHECK_THROWS_AS(LoadManifest((dir / "nope.jsonl").string()), inear::IoError);
  fs::remove_all(dir);
}

TEST_CASE("bc_simulate passband and stopband") {
  BcSimConfig c;
  auto pass = inear::testing::Sine(1000, 2.0, 0.3);
  auto stop = inear::testing::Sine(4500, 2.0, 0.3);
  const double pass_db = FullLevel(BcSimulate(pass, c)) - FullLevel(pass);
  const double stop_db = FullLevel(BcSimulate(stop, c)) - FullLevel(stop);
  const double steady_db = inear::testing::Db(
      inear::testing::RmsRange(BcSimulate(stop, c).samples(), 8000, 32000) /
      inear::testing::RmsRange(stop.samples(), 8000, 32000));
  CHECK(std::abs(pass_db) <= 1.0);
  CHECK(stop_db <= -40.0);
  CHECK(std::abs(pass_db - ButterworthDb(1000, 2000, 8)) <= 0.1);
  CHECK(std::abs(steady_db - ButterworthDb(4500, 2000, 8)) <= 0.5);
  CHECK(std::abs(FullLevel(BcSimulate(inear::testing::Sine(2000, 2.0, 0.3), c)) -
                 FullLevel(inear::testing::Sine(2000, 2.0, 0.3)) + 3.01) <= 0.3);

  BcSimConfig bad;
  bad.order = 7;
  CHECK_THROWS_AS(bad.Validate(), inear::ConfigError);
  bad = {};
  bad.cutoff_hz = 9000;
  CHECK_THROWS_AS(BcSimulate(pass, bad), inear::ConfigError);
}

TEST_CASE("bc_simulate occlusion option boosts low band") {
  BcSimConfig c;
  c.also_apply_occlusion = true;
  auto x = inear::testing::Sine(500, 2.0, 0.1);
  CHECK(FullLevel(BcSimulate(x, c)) - FullLevel(x) == doctest::Approx(10.0).epsilon(0.03));
  auto stereo = AudioBuffer::Stereo(x, x * 0.5);
  auto y = BcSimulate(stereo, BcSimConfig{});
  CHECK(y.channel_count() == 2);
}

TEST_CASE("property: passband idempotence") {
  inear::testing::Gen g(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto shape = static_cast<inear::channel::NoiseShape>(g.Int(0, 4));
    auto x = inear::channel::GenerateNoise(shape, 2.0, g.Seed());
    BcSimConfig c;
    c.cutoff_hz = g.Uniform(1500, 3000);
    c.order = 2 * g.Int(1, 5);
    auto once = BcSimulate(x, c);
    auto twice = BcSimulate(once, c);
    const inear::eval::Band low{0, 1000};
    auto a = inear::eval::BandLevel(once, low), b = inear::eval::BandLevel(twice, low);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(std::abs(*a - *b) < 1.0);
  }
}

TEST_CASE("bc_simulate_corpus") {
  const fs::path dir = TempDir("corpus");
  const fs::path out = dir / "out";
  inear::core::WriteWav((dir / "one.wav").string(), inear::testing::Sine(1000, 1.0, 0.3));
  inear::core::WriteWav((dir / "two.wav").string(), inear::testing::Sine(4500, 1.0, 0.3));
  inear::core::WriteFileBytes((dir / "bad.wav").string(), "not a wav file");
  inear::core::WriteFileBytes((dir / "m.jsonl").string(),
                              Line("one.wav", "a") + Line("bad.wav", "b") +
                                  Line("two.wav", "c") + Line("gone.wav", "d"));
  auto m = LoadManifest((dir / "m.jsonl").string());
  CHECK(m.missing.size() == 1);

  auto report = BcSimulateCorpus(m, {}, out.string(), 3);
  REQUIRE(report.files.size() == 4);
  CHECK(report.failures() == 2);
  CHECK(report.files[0].ok());
  CHECK_FALSE(report.files[1].ok());
  CHECK(report.files[2].ok());
  CHECK_FALSE(report.files[3].ok());
  CHECK(std::abs(*report.files[0].post_level_db - *report.files[0].pre_level_db) <= 1.0);
  CHECK(*report.files[2].post_level_db <= *report.files[2].pre_level_db - 40.0);

  auto written = LoadManifest((out / "manifest.jsonl").string());
  CHECK(written.entries.size() == m.entries.size() - report.failures());
  CHECK(written.missing.empty());
  CHECK(written.entries[1].transcript == "c");
  CHECK(inear::core::ReadWav((out / "one.wav").string()).frames() == 16000);

  const std::string first = inear::core::ReadFileBytes((out / "report.json").string());
  BcSimulateCorpus(m, {}, out.string(), 1);
  CHECK(inear::core::ReadFileBytes((out / "report.json").string()) == first);

  auto empty = BcSimulateCorpus(ParseManifest("", ""), {}, (dir / "empty").string());
  CHECK(empty.files.empty());
  CHECK(empty.failures() == 0);
  CHECK(inear::core::ReadFileBytes((dir / "empty" / "manifest.jsonl").string()).empty());
  fs::remove_all(dir);
}

TEST_CASE("bc config json") {
  auto c = BcSimConfigFromJson(
      inear::json_util::Parse(R"({"cutoff": 2500, "order": 6})", "t"), "bc_sim");
  CHECK(c.cutoff_hz == 2500);
  CHECK(c.order == 6);
  CHECK_FALSE(c.also_apply_occlusion);
  CHECK_THROWS_WITH_AS(
      BcSimConfigFromJson(inear::json_util::Parse(R"({"order": 5})", "t"), "run.bc_sim"),
      doctest::Contains("run.bc_sim.order"), inear::ConfigError);
  CHECK_THROWS_AS(
      BcSimConfigFromJson(inear::json_util::Parse(R"({"cutof": 5})", "t"), "bc_sim"),
      inear::ConfigError);
}
