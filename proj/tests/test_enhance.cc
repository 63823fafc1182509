// tests/test_enhance.cc

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

#include "doctest.h"
#include "inear/channel/simulator.h"
#include "inear/core/spectrum.h"
#include "inear/enhance/aec.h"
#include "inear/enhance/gate.h"
#include "inear/error.h"
#include "test_util.h"

using namespace inear;
using namespace inear::enhance;
using core::AudioBuffer;
using core::SpectroFrame;
using inear::testing::Gen;

namespace {

double BandDb(const AudioBuffer &b, double lo, double hi) {
  return core::MeanSquareToDb(core::WelchSpectrum(b).BandPower(lo, hi), {});
}

SpectroFrame RandomFrame(Gen &g, std::size_t bins) {
  SpectroFrame f;
  f.bin_hz = 31.25;
  f.bins.resize(bins);
  for (auto &c : f.bins) c = {g.Normal(), g.Normal()};
  return f;
}

channel::MicPair ExternalSpeech(bool anc, uint64_t seed) {
  channel::ScenarioSpec s;
  s.whisper_source = channel::SourceSpec::Silent();
  s.noise_source = channel::SourceSpec::Generator(channel::NoiseShape::kSpeech);
  s.noise_level = 60;
  s.anc_on = anc;
  s.duration = 4;
  s.rng_seed = seed;
  return channel::SimulateScenario(s);
}

}  // namespace

TEST_CASE("gate closes on silent inner") {
  auto outer = testing::WhiteNoise(16000, 1);
  auto inner = AudioBuffer::Zeros(16000, 16000);
  auto r = DoubleNoiseGate(inner, outer);
  for (double v : r.output.samples()) CHECK(v == 0.0);
  CHECK(r.mask.OpenFraction() == 0.0);
}

TEST_CASE("gate passes bone-conducted whisper") {
  channel::ScenarioSpec s;
  s.noise_source = channel::SourceSpec::Silent();
  s.duration = 4;
  auto p = channel::SimulateScenario(s);
  const auto prof = channel::ChannelProfile::Default();
  auto outer = core::ApplyProfile(p.ground_truth.clean_whisper_at_outer, prof.passive_attenuation);
  auto inner = p.ground_truth.clean_whisper_at_inner;
  GateConfig c;
  c.compensation = GateConfig::CompensationFor(prof, false);
  auto r = DoubleNoiseGate(inner, outer, c);
  CHECK(std::abs(BandDb(r.output, 0, 1500) - BandDb(inner, 0, 1500)) <= 3);
}

TEST_CASE("gate tie stays closed") {
  for (double hyst : {0.0, 3.0}) {
    GateConfig c;
    c.compensation = core::BandGainProfile::Flat(0);
    c.hysteresis_db = hyst;
    Gen g(4);
    GateState st(c, 257, 31.25);
    auto f = RandomFrame(g, 257);
    for (double gain : st.Step(f, f)) CHECK(gain == c.floor_db);
    auto x = testing::WhiteNoise(8000, 2);
    CHECK(DoubleNoiseGate(x, x, c).mask.OpenFraction() == 0.0);
  }
}

TEST_CASE("gate hysteresis and hold") {
  GateConfig c;
  c.compensation = core::BandGainProfile::Flat(0);
  c.hold_frames = 4;
  SpectroFrame outer, loud, quiet, mid;
  outer.bins = {1.0};
  loud.bins = {10.0};                        // +20 dB
  quiet.bins = {0.1};                        // -20 dB
  mid.bins = {std::pow(10.0, 2.0 / 20)};     // +2 dB
  GateState a(c, 1, 1.0);
  CHECK(a.Step(mid, outer)[0] == c.floor_db);  // below hysteresis
  CHECK(a.Step(loud, outer)[0] == 0.0);
  CHECK(a.Step(quiet, outer)[0] == 0.0);
  CHECK(a.Step(quiet, outer)[0] == 0.0);
  CHECK(a.Step(quiet, outer)[0] == 0.0);
  CHECK(a.Step(quiet, outer)[0] == c.floor_db);  // held exactly 4 frames
  c.hysteresis_db = 0;
  GateState b(c, 1, 1.0);
  CHECK(b.Step(mid, outer)[0] == 0.0);
  GateState d(c, 1, 1.0);
  CHECK(d.Step(loud, outer)[0] == 0.0);
  CHECK(d.Step(mid, outer)[0] == 0.0);  // open while excess > 0
  CHECK(d.Step(mid, outer)[0] == 0.0);
  CHECK(d.Step(mid, outer)[0] == 0.0);
  CHECK(d.Step(mid, outer)[0] == 0.0);
  CHECK(d.Step(mid, outer)[0] == 0.0);
}

TEST_CASE("gate never amplifies and is monotone in outer level") {
  Gen g(2024);
  GateConfig c;
  for (int trial = 0; trial < 1000; ++trial) {
    auto inner = RandomFrame(g, 257);
    auto outer = RandomFrame(g, 257);
    const double scale = std::pow(10.0, g.Uniform(-40, 0) / 20);
    for (auto &v : outer.bins) v *= scale;
    GateState s1(c, 257, 31.25);
    auto gains = s1.Step(inner, outer);
    auto louder = outer;
    for (auto &v : louder.bins) v *= std::pow(10.0, g.Uniform(0, 20) / 20);
    GateState s2(c, 257, 31.25);
    auto gains2 = s2.Step(inner, louder);
    for (std::size_t k = 0; k < 257; ++k) {
      REQUIRE((gains[k] == 0.0 || (gains[k] >= c.floor_db && gains[k] < 0)));
      REQUIRE(std::abs(inner.bins[k]) * core::DbToAmplitude(gains[k]) <=
              std::abs(inner.bins[k]));
      if (gains[k] != 0.0) REQUIRE(gains2[k] != 0.0);
    }
  }
}

TEST_CASE("gate rejects external speech") {
  for (bool anc : {false, true}) {
    auto p = ExternalSpeech(anc, 11);
    GateConfig c;
    c.compensation = GateConfig::CompensationFor(channel::ChannelProfile::Default(), anc);
    auto r = DoubleNoiseGate(p.inner, p.outer, c);
    CHECK(BandDb(r.output, 0, 8000) <= BandDb(p.inner, 0, 8000) - 30);
  }
}

TEST_CASE("gate mask CSV and errors") {
  auto x = testing::WhiteNoise(1000, 1);
  auto r = DoubleNoiseGate(x, x * 0.5);
  const std::string csv = r.mask.ToCsv();
  CHECK(csv.rfind("frame_index,band_hz,gain_db\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(r.mask.frames() * r.mask.bins() + 1));
  CHECK_THROWS_AS(DoubleNoiseGate(x, testing::WhiteNoise(999, 1)), InvalidArgument);
  GateConfig bad;
  bad.floor_db = 0;
  CHECK_THROWS_AS(DoubleNoiseGate(x, x, bad), ConfigError);
}

namespace {

channel::MicPair EchoScenario(bool near_end, uint64_t seed = 3) {
  channel::ScenarioSpec s;
  s.whisper_source = near_end ? channel::SourceSpec::Generator(channel::NoiseShape::kWhisper)
                              : channel::SourceSpec::Silent();
  s.noise_source = channel::SourceSpec::Silent();
  s.playback = channel::PlaybackSpec{};
  s.duration = 6;
  s.rng_seed = seed;
  return channel::SimulateScenario(s);
}

}  // namespace

TEST_CASE("AEC converges on the seeded echo path") {
  auto p = EchoScenario(false);
  auto r = EchoCancel(p.inner, p.playback, {}, &p.ground_truth.echo_at_inner);
  REQUIRE(r.erle_trace.size() == 6);
  REQUIRE(r.erle_trace[2]);
  CHECK(*r.erle_trace[2] >= 20);
  const std::size_t from = 2 * 16000;
  auto resid = AudioBuffer(std::vector<double>(r.output.samples().begin() + from,
                                               r.output.samples().end()), 16000);
  auto echo = AudioBuffer(std::vector<double>(p.ground_truth.echo_at_inner.samples().begin() + from,
                                              p.ground_truth.echo_at_inner.samples().end()), 16000);
  CHECK(Erle(echo, resid) >= 20);
  auto est = EchoCancel(p.inner, p.playback);
  REQUIRE(est.erle_trace[2]);
  CHECK(*est.erle_trace[2] >= 20);
}

TEST_CASE("AEC identities") {
  auto p = EchoScenario(true);
  auto silent = AudioBuffer::Zeros(p.inner.frames(), 16000);
  CHECK(EchoCancel(p.inner, silent).output == p.inner);
  AecConfig frozen;
  frozen.step = 0;
  CHECK(EchoCancel(p.inner, p.playback, frozen).output == p.inner);
  CHECK_THROWS_AS(EchoCancel(p.inner, p.playback.Head(10)), InvalidArgument);
  AecConfig bad;
  bad.step = 2;
  CHECK_THROWS_AS(EchoCancel(p.inner, p.playback, bad), ConfigError);
}

TEST_CASE("AEC preserves near-end whisper") {
  for (uint64_t seed : {3u, 4u, 5u}) {
    auto p = EchoScenario(true, seed);
    auto r = EchoCancel(p.inner, p.playback);
    const std::size_t from = 3 * 16000;
    CHECK(core::NormalizedCorrelation(r.output.samples().subspan(from),
                                      p.ground_truth.clean_whisper_at_inner.samples().subspan(from)) >= 0.9);
  }
}

TEST_CASE("ERLE metric") {
  auto e = testing::WhiteNoise(4000, 8);
  CHECK(Erle(e, e) == doctest::Approx(0));
  CHECK(Erle(e, e * 0.1) == doctest::Approx(20));
  CHECK(Erle(e, AudioBuffer::Zeros(4000, 16000)) == kErleCapDb);
  CHECK_THROWS_AS(Erle(AudioBuffer::Zeros(4000, 16000), e), InvalidArgument);
  Gen g(1);
  for (int i = 0; i < 100; ++i) {
    auto a = testing::WhiteNoise(500, g.Seed());
    auto b = testing::WhiteNoise(500, g.Seed(), g.Uniform(0.001, 1));
    const double s = std::pow(10.0, g.Uniform(-3, 3));
    CHECK(std::abs(Erle(a * s, b * s) - Erle(a, b)) < 1e-9);
  }
}
