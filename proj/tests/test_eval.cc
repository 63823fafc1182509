// tests/test_eval.cc

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

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "doctest.h"
#include "fixtures.h"
#include "httplib.h"
#include "inear/error.h"
#include "inear/eval/band_levels.h"
#include "inear/eval/recognition.h"
#include "inear/eval/snr.h"
#include "inear/eval/wer.h"
#include "test_util.h"
#include "wer_table.h"

using inear::core::AudioBuffer;
using namespace inear::eval;
using inear::channel::ScenarioSpec;
using inear::testing::Gen;

namespace {

ScenarioSpec Make(const std::string &name, double whisper, double noise, bool anc,
                  uint64_t seed = 1, double duration = 4.0) {
  ScenarioSpec s;
  s.name = name;
  s.whisper_level = whisper;
  s.noise_level = noise;
  s.anc_on = anc;
  s.rng_seed = seed;
  s.duration = duration;
  return s;
}

double PowerDb(double db) { return std::pow(10.0, db / 10.0); }

// Local transcription endpoint for client tests.
class FakeServer {
 public:
  FakeServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server &server() { return server_; }
  std::string url(const std::string &path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("band_levels examples") {
  auto sine = inear::testing::Sine(1000, 2.0, 1.0);
  auto levels = BandLevels(sine, {{900, 1100}, {2000, 3000}});
  REQUIRE(levels[0]);
  CHECK(std::abs(*levels[0] - 100.0) <= 0.5);
  REQUIRE(levels[1]);
  CHECK(*levels[1] <= 40.0);

  auto silent = BandLevels(AudioBuffer::Zeros(16000, 16000), {{0, 1000}, {1000, 8000}});
  CHECK_FALSE(silent[0]);
  CHECK_FALSE(silent[1]);
  CHECK(LevelToCsv(silent[0]).empty());
  CHECK(LevelToJson(silent[0]).is_null());

  CHECK_THROWS_AS(BandLevels(sine, {}), inear::InvalidArgument);
  CHECK_THROWS_AS(BandLevels(sine, {{9000, 9500}}), inear::InvalidArgument);
}

TEST_CASE("property: band_levels partition sums to full band") {
  Gen g(31);
  for (int trial = 0; trial < 25; ++trial) {
    auto x = inear::testing::WhiteNoise(16000, g.Seed(), g.Uniform(0.01, 0.5));
    std::vector<double> edges = {0, 8000};
    for (int k = 0, n = g.Int(1, 8); k < n; ++k) edges.push_back(g.Uniform(10, 7990));
    std::sort(edges.begin(), edges.end());
    std::vector<Band> bands;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k)
      if (edges[k + 1] > edges[k]) bands.push_back({edges[k], edges[k + 1]});
    double sum = 0;
    for (const auto &l : BandLevels(x, bands))
      if (l) sum += PowerDb(*l);
    const double full = *BandLevel(x, {0, 8000});
    CHECK(std::abs(10 * std::log10(sum) - full) <= 0.1);
  }
}

TEST_CASE("snr improvement") {
  CHECK(SnrImprovement(20.0, -20.0) == 40.0);
  CHECK(SnrImprovement(7.5, 7.5) == 0.0);

  auto pair = inear::channel::SimulateScenario(Make("n80", 40, 80, true));
  const double imp = SnrImprovement(pair, {0, 1500});
  CHECK(std::abs(imp - 40.0) <= 3.0);

  inear::channel::MicPair broken = pair;
  broken.ground_truth.noise_at_outer = AudioBuffer();
  CHECK_THROWS_AS(SnrImprovement(broken, {0, 1500}), inear::InvalidArgument);
}

TEST_CASE("property: snr improvement antisymmetry") {
  Gen g(32);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = g.Uniform(-60, 60), b = g.Uniform(-60, 60);
    CHECK(SnrImprovement(a, b) == -SnrImprovement(b, a));
  }
}

TEST_CASE("noise margins in a quiet room") {
  auto pair = inear::channel::SimulateScenario(Make("quiet", 40, 33, false));
  const auto &t = pair.ground_truth;
  const Band low{0, 1500};
  const double inner =
      NoiseMargin(t.clean_whisper_at_inner + t.noise_at_inner, t.noise_at_inner, low);
  const double outer =
      NoiseMargin(t.clean_whisper_at_outer + t.noise_at_outer, t.noise_at_outer, low);
  CHECK(std::abs(inner - 20.0) <= 3.0);
  CHECK(std::abs(outer - 10.0) <= 3.0);
  CHECK(NoiseMargin(t.noise_at_inner, t.noise_at_inner, low) == 0.0);
  CHECK_THROWS_AS(NoiseMargin(t.noise_at_inner, t.noise_at_inner, {0, 9000}),
                  inear::InvalidArgument);

  auto c = MeasureCondition("quiet", pair, ThirdOctaveBands(16000), low);
  REQUIRE(c.inner_margin_db);
  CHECK(*c.inner_margin_db == doctest::Approx(inner));
}

TEST_CASE("snr report export") {
  SnrReport r;
  r.bands = ReportBands(16000);
  r.conditions.push_back(MeasureCondition(
      "w40_n60_anc", inear::channel::SimulateScenario(Make("a", 40, 60, true, 1, 2.0)),
      r.bands, r.low_band));
  const std::string csv = r.SpectraCsv();
  CHECK(csv.rfind("band_hz_low,band_hz_high,condition,level_db\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 4);
  CHECK(csv.find("w40_n60_anc/inner_whisper") != std::string::npos);
  auto j = r.ToJson();
  CHECK(std::abs(j["conditions"][0]["improvement_db"].get<double>() - 40.0) <= 3.0);

  const auto third = ThirdOctaveBands(16000);
  CHECK(third.front().low_hz >= 44.0);
  CHECK(third.back().high_hz == 8000.0);
}

TEST_CASE("word_error_rate hand-aligned table") {
  for (const auto &p : inear::testing::HandAlignedPairs()) {
    CAPTURE(p.reference);
    CAPTURE(p.hypothesis);
    auto e = WordErrorRate(p.reference, p.hypothesis, p.mode);
    CHECK(e.substitutions == p.s);
    CHECK(e.deletions == p.d);
    CHECK(e.insertions == p.i);
    CHECK(e.rate == doctest::Approx(p.rate));
  }
  CHECK_THROWS_AS(WordErrorRate("  ", "a"), inear::InvalidArgument);
  CHECK_THROWS_AS(WordErrorRate("a\xff", "a", WerMode::kCharacter), inear::InvalidArgument);
  CHECK(DefaultWerMode("ja-JP") == WerMode::kCharacter);
  CHECK(DefaultWerMode("en") == WerMode::kToken);
  CHECK(Tokenize("ab 漢字", WerMode::kCharacter).size() == 4);
  CHECK(ParseWerMode("character") == WerMode::kCharacter);
}

namespace {

std::vector<std::string> RandomTokens(Gen &g, int alphabet) {
  std::vector<std::string> t;
  for (int k = 0, n = g.Int(0, 8); k < n; ++k) t.push_back("w" + std::to_string(g.Int(0, alphabet)));
  return t;
}

std::string JoinTokens(const std::vector<std::string> &t) {
  std::string s;
  for (const auto &w : t) s += w + " ";
  return s;
}

std::size_t Distance(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  if (a.empty()) return b.size();
  return WordErrorRate(JoinTokens(a), JoinTokens(b)).errors();
}

}  // namespace

TEST_CASE("property: WER metric axioms") {
  Gen g(33);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = RandomTokens(g, 4), b = RandomTokens(g, 4), c = RandomTokens(g, 4);
    if (!a.empty()) CHECK(WordErrorRate(JoinTokens(a), JoinTokens(a)).rate == 0.0);
    CHECK(Distance(a, b) == Distance(b, a));
    CHECK(Distance(a, c) <= Distance(a, b) + Distance(b, c));
    if (!a.empty()) {
      auto relabel = [](std::vector<std::string> t) {
        for (auto &w : t) w = "r" + w + "x";
        return t;
      };
      auto e1 = WordErrorRate(JoinTokens(a), JoinTokens(b));
      auto e2 = WordErrorRate(JoinTokens(relabel(a)), JoinTokens(relabel(b)));
      CHECK(e1.substitutions == e2.substitutions);
      CHECK(e1.deletions == e2.deletions);
      CHECK(e1.insertions == e2.insertions);
    }
  }
}

TEST_CASE("property: pooled aggregate invariant under duplication") {
  Gen g(34);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<WerEntry> entries;
    for (int k = 0, n = g.Int(1, 10); k < n; ++k) {
      auto ref = RandomTokens(g, 5);
      if (ref.empty()) ref.push_back("w");
      entries.push_back(WordErrorRate(JoinTokens(ref), JoinTokens(RandomTokens(g, 5))));
    }
    auto doubled = entries;
    doubled.insert(doubled.end(), entries.begin(), entries.end());
    CHECK(PooledRate(doubled) == doctest::Approx(PooledRate(entries)).epsilon(1e-15));
  }
  CHECK(PooledRate({}) == 0.0);
  CHECK(PooledRate({WordErrorRate("a b c d", "a"), WordErrorRate("a", "a")}) ==
        doctest::Approx(3.0 / 5.0));
}

TEST_CASE("recognition eval with mock transcriber") {
  const auto dir = inear::testing::TempDir("receval");
  auto manifest = inear::dataset::LoadManifest(inear::testing::WriteWhisperCorpus(dir, 15));
  REQUIRE(manifest.missing.empty());

  SUBCASE("echoing mock scores zero with three repetitions") {
    MockTranscriber mock(EchoReferences(manifest));
    RecognitionConfig cfg;
    cfg.repetitions = 3;
    cfg.parallel = 2;
    std::vector<ScenarioSpec> scenarios = {Make("n60", 40, 60, true, 7),
                                           Make("n90", 40, 90, true, 7)};
    auto report = RunRecognitionEval(manifest, scenarios, cfg, mock);
    CHECK(report.rows.size() == 90);
    REQUIRE(report.conditions.size() == 2);
    for (const auto &c : report.conditions) {
      CHECK(c.rows == 45);
      CHECK(c.wer == 0.0);
      CHECK(c.vad_failures == 0);
    }
    CHECK(report.failures.empty());
    CHECK(report.rows[0].mode == WerMode::kCharacter);
    CHECK(report.rows[0].phrase_id == "audio/p0.wav");
    CHECK(report.rows[1].scenario == "n90");
    CHECK(report.rows[2].repetition == 1);

    const std::string csv = report.ToCsv();
    CHECK(csv.rfind("phrase_id,noise_dba,anc,pipeline,wer,vad_failure\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 91);

    cfg.parallel = 1;
    auto serial = RunRecognitionEval(manifest, scenarios, cfg, mock);
    CHECK(inear::json_util::Dump(serial.ToJson()) == inear::json_util::Dump(report.ToJson()));
  }

  SUBCASE("VAD failures above 85 dB(A)") {
    auto mc = EchoReferences(manifest);
    mc.no_speech_above_dba = 85.0;
    MockTranscriber mock(mc);
    RecognitionConfig cfg;
    cfg.pipelines = {Pipeline::kInner, Pipeline::kGate};
    auto report = RunRecognitionEval(
        manifest, {Make("n80", 40, 80, true, 3), Make("n90", 40, 90, true, 3)}, cfg, mock);
    REQUIRE(report.conditions.size() == 4);
    CHECK(report.conditions[0].vad_failures == 0);
    CHECK(report.conditions[2].scenario == "n90");
    CHECK(report.conditions[2].vad_failures == 15);
    CHECK(report.conditions[2].wer == 1.0);
    CHECK(report.conditions[3].vad_failures == 15);
    CHECK(report.vad_failures() == 30);
  }

  SUBCASE("missing audio is itemized") {
    auto m = manifest;
    m.entries.push_back({"audio/none.wav", "x", "ja", std::nullopt});
    MockTranscriber mock(EchoReferences(m));
    auto report = RunRecognitionEval(m, {Make("n60", 40, 60, true)}, {}, mock);
    CHECK(report.rows.size() == 15);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].stage == "audio");
    CHECK(report.conditions[0].wer == 0.0);
  }

  SUBCASE("config errors") {
    MockTranscriber mock({});
    RecognitionConfig cfg;
    cfg.repetitions = 0;
    CHECK_THROWS_AS(RunRecognitionEval(manifest, {}, cfg, mock), inear::ConfigError);
    CHECK_THROWS_AS(RunRecognitionEval(manifest, {Make("a", 40, 60, true), Make("a", 40, 70, true)},
                                       {}, mock),
                    inear::ConfigError);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("pipelines") {
  auto s = Make("pb", 40, 60, true, 5, 3.0);
  s.playback = inear::channel::PlaybackSpec{};
  auto pair = inear::channel::SimulateScenario(s);
  RecognitionConfig cfg;
  auto aec = RunPipeline(Pipeline::kAec, pair, s, cfg.profile, cfg.gate, cfg.aec);
  CHECK(aec.frames() == pair.inner.frames());
  CHECK(RunPipeline(Pipeline::kOuter, pair, s, cfg.profile, cfg.gate, cfg.aec) == pair.outer);
  CHECK(inear::core::Rms(aec.samples()) < inear::core::Rms(pair.inner.samples()));
  CHECK(ParsePipeline("aec_gate") == Pipeline::kAecGate);
  CHECK_THROWS_AS(ParsePipeline("magic"), inear::InvalidArgument);
}

TEST_CASE("http transcriber") {
  FakeServer fake;
  std::atomic<int> flaky_calls{0}, bad_calls{0};
  std::string seen_auth, seen_lang, seen_type;
  std::size_t seen_bytes = 0;
  fake.server().Post("/ok", [&](const httplib::Request &req, httplib::Response &res) {
    seen_auth = req.get_header_value("Authorization");
    seen_lang = req.get_param_value("language");
    seen_type = req.get_header_value("Content-Type");
    seen_bytes = req.body.size();
    res.set_content(R"({"text": "こんにちは"})", "application/json");
  });
  fake.server().Post("/quiet", [](const httplib::Request &, httplib::Response &res) {
    res.set_content(R"({"no_speech": true})", "application/json");
  });
  fake.server().Post("/flaky", [&](const httplib::Request &, httplib::Response &res) {
    if (++flaky_calls < 3) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"text": "ok"})", "application/json");
  });
  fake.server().Post("/bad", [&](const httplib::Request &, httplib::Response &res) {
    ++bad_calls;
    res.status = 400;
  });

  auto audio = inear::testing::Sine(300, 0.5, 0.1);
  auto make = [&](const std::string &path) {
    HttpConfig c;
    c.endpoint = fake.url(path);
    c.backoff_s = 0.01;
    c.timeout_s = 5;
    return HttpTranscriber(c);
  };

  ::setenv("INEAR_TRANSCRIBER_TOKEN", "secret", 1);
  auto t = make("/ok").Transcribe(audio, "ja", {"u1", 60});
  ::unsetenv("INEAR_TRANSCRIBER_TOKEN");
  REQUIRE(t.text);
  CHECK(*t.text == "こんにちは");
  CHECK(seen_auth == "Bearer secret");
  CHECK(seen_lang == "ja");
  CHECK(seen_type == "audio/wav");
  CHECK(seen_bytes == 44 + 2 * audio.frames());

  CHECK(make("/quiet").Transcribe(audio, "ja", {}).no_speech());
  CHECK(*make("/flaky").Transcribe(audio, "en", {}).text == "ok");
  CHECK(flaky_calls == 3);

  try {
    make("/bad").Transcribe(audio, "en", {});
    FAIL("expected TransportError");
  } catch (const TransportError &e) {
    CHECK(e.attempts() == 1);
    CHECK(bad_calls == 1);
  }

  HttpConfig dead;
  dead.endpoint = "http://127.0.0.1:1/asr";
  dead.backoff_s = 0.001;
  dead.timeout_s = 1;
  try {
    HttpTranscriber(dead).Transcribe(audio, "en", {});
    FAIL("expected TransportError");
  } catch (const TransportError &e) {
    CHECK(e.attempts() == 4);
  }

  HttpConfig nonsense;
  nonsense.endpoint = "ftp://x";
  CHECK_THROWS_AS(HttpTranscriber{nonsense}, inear::ConfigError);
}

TEST_CASE("recognition eval with unreachable transcriber itemizes failures") {
  const auto dir = inear::testing::TempDir("recdead");
  auto manifest = inear::dataset::LoadManifest(inear::testing::WriteWhisperCorpus(dir, 3, 0.5));
  HttpConfig dead;
  dead.endpoint = "http://127.0.0.1:1/asr";
  dead.retries = 1;
  dead.backoff_s = 0.001;
  dead.timeout_s = 1;
  HttpTranscriber t(dead);
  auto report = RunRecognitionEval(manifest, {Make("n60", 40, 60, true, 1, 0.5)}, {}, t);
  CHECK(report.rows.empty());
  REQUIRE(report.failures.size() == 3);
  CHECK(report.failures[0].stage == "transcribe");
  CHECK(report.failures[0].attempts == 2);
  CHECK(report.conditions[0].failures == 3);
  CHECK(report.conditions[0].rows == 0);
  std::filesystem::remove_all(dir);
}
