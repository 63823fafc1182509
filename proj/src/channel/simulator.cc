// channel/simulator.cc

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

#include "inear/channel/simulator.h"

#include <cmath>
#include <numbers>
#include <random>

#include "inear/core/filters.h"
#include "inear/core/spectrum.h"
#include "inear/core/stft.h"
#include "inear/core/wav.h"
#include "inear/error.h"

namespace inear::channel {

using core::AudioBuffer;

namespace {

enum Stream : uint64_t { kWhisper = 1, kNoise = 2, kEcho = 3, kPlayback = 4 };

std::size_t FrameCount(const ScenarioSpec &s) {
  return static_cast<std::size_t>(std::llround(s.duration * s.sample_rate));
}

AudioBuffer ResolveSource(const SourceSpec &src, const ScenarioSpec &s,
                          Stream stream, const char *role) {
  const std::size_t n = FrameCount(s);
  switch (src.kind) {
    case SourceSpec::Kind::kSilent:
      return AudioBuffer::Zeros(n, s.sample_rate);
    case SourceSpec::Kind::kGenerator: {
      const uint64_t seed = src.seed ? *src.seed : DeriveSeed(s.rng_seed, stream);
      AudioBuffer b = GenerateNoise(src.shape, s.duration, seed, s.sample_rate);
      return b.Head(n);
    }
    case SourceSpec::Kind::kBuffer: {
      const AudioBuffer &b = *src.buffer;
      if (b.sample_rate() != s.sample_rate)
        throw InvalidArgument(std::string(role) + " source: sample rate " +
                              std::to_string(b.sample_rate()) + " != scenario " +
                              std::to_string(s.sample_rate));
      if (b.channel_count() != 1)
        throw InvalidArgument(std::string(role) + " source: mono audio required");
      if (b.frames() < n)
        throw InvalidArgument(std::string(role) +
                              " source shorter than scenario duration");
      return b.Head(n);
    }
  }
  throw InvariantError("unreachable source kind");
}

AudioBuffer AtLevel(const AudioBuffer &x, double dba,
                    const core::CalibrationRef &calib) {
  if (!core::AWeightedLevel(x, calib)) return x;  // silent stays silent
  return core::CalibrateToLevel(x, dba, calib).buffer;
}

void Prepare(const ScenarioSpec &s, const ChannelProfile &profile) {
  s.Validate();
  profile.Validate();
}

}  // namespace

std::vector<double> EchoPath(uint64_t seed, int taps, double gain_db) {
  if (taps < 1) throw InvalidArgument("echo path: taps must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> h(taps);
  double energy = 0.0;
  for (int k = 0; k < taps; ++k) {
    h[k] = dist(rng) * std::exp(-k / 16.0);
    energy += h[k] * h[k];
  }
  const double scale = core::DbToAmplitude(gain_db) / std::sqrt(energy);
  for (double &v : h) v *= scale;
  return h;
}

AudioBuffer DeformationPulses(const DeformationTrack &track, std::size_t frames,
                              int sample_rate, double amplitude) {
  track.Validate("events");
  std::vector<double> x(frames, 0.0);
  const std::size_t width =
      std::max<std::size_t>(1, std::llround(track.pulse_width * sample_rate));
  for (double t : track.onsets) {
    const std::size_t start = std::llround(t * sample_rate);
    for (std::size_t i = 0; i < width && start + i < frames; ++i)
      x[start + i] += amplitude *
                      (0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / width));
  }
  AudioBuffer out(std::move(x), sample_rate);
  out = core::ButterworthFilter(out, core::FilterKind::kHighpass, track.band_low_hz, 4);
  return core::ButterworthFilter(out, core::FilterKind::kLowpass, track.band_high_hz, 4);
}

OuterMic SimulateOuterMic(const ScenarioSpec &s, const ChannelProfile &profile,
                          const core::CalibrationRef &calib) {
  Prepare(s, profile);
  OuterMic o;
  o.whisper = AtLevel(ResolveSource(s.whisper_source, s, kWhisper, "whisper"),
                      s.whisper_level, calib);
  o.noise = AtLevel(ResolveSource(s.noise_source, s, kNoise, "noise"), s.noise_level,
                    calib);
  o.mic = o.whisper + o.noise;
  return o;
}

namespace {

InnerMic InnerFromOuter(const ScenarioSpec &s, const ChannelProfile &profile,
                        const core::CalibrationRef &calib, const OuterMic &o) {
  InnerMic in;
  in.whisper = core::ApplyProfile(o.whisper, profile.BoneConductionPath());
  in.noise = core::ApplyProfile(o.noise, profile.ExternalPath(s.anc_on));
  const std::size_t n = FrameCount(s);
  in.playback = AudioBuffer::Zeros(n, s.sample_rate);
  in.echo = AudioBuffer::Zeros(n, s.sample_rate);
  in.events = AudioBuffer::Zeros(n, s.sample_rate);
  if (s.playback) {
    in.playback = AtLevel(ResolveSource(s.playback->source, s, kPlayback, "playback"),
                          s.playback->level_dba, calib);
    const std::vector<double> h =
        EchoPath(DeriveSeed(s.rng_seed, kEcho), profile.echo_taps, profile.echo_gain_db);
    in.echo = AudioBuffer(core::FftConvolve(in.playback.samples(), h, 0), s.sample_rate);
  }
  if (s.events && !s.events->onsets.empty()) {
    double ref = core::Rms(in.whisper.samples());
    if (!(ref > 0)) ref = std::sqrt(core::DbToMeanSquare(s.whisper_level, calib));
    in.events = DeformationPulses(*s.events, n, s.sample_rate,
                                  s.events->pulse_amplitude * ref);
  }
  in.mic = in.whisper + in.noise + in.echo + in.events;
  return in;
}

}  // namespace

InnerMic SimulateInnerMic(const ScenarioSpec &s, const ChannelProfile &profile,
                          const core::CalibrationRef &calib) {
  return InnerFromOuter(s, profile, calib, SimulateOuterMic(s, profile, calib));
}

MicPair SimulateScenario(const ScenarioSpec &s, const ChannelProfile &profile,
                         const core::CalibrationRef &calib) {
  OuterMic o = SimulateOuterMic(s, profile, calib);
  InnerMic in = InnerFromOuter(s, profile, calib, o);
  MicPair p;
  p.inner = in.mic;
  p.outer = o.mic;
  p.playback = in.playback;
  p.ground_truth.clean_whisper_at_inner = std::move(in.whisper);
  p.ground_truth.noise_at_inner = std::move(in.noise);
  p.ground_truth.clean_whisper_at_outer = std::move(o.whisper);
  p.ground_truth.noise_at_outer = std::move(o.noise);
  p.ground_truth.echo_at_inner = std::move(in.echo);
  p.ground_truth.events_at_inner = std::move(in.events);
  return p;
}

BinauralResult BinauralCombine(const AudioBuffer &left, const AudioBuffer &right,
                               const std::optional<BinauralTruth> &truth) {
  core::RequireMono(left, "binaural_combine");
  core::RequireSameShape(left, right, "binaural_combine");
  const double k = 1.0 / std::sqrt(2.0);
  BinauralResult r;
  r.combined = (left + right) * k;
  if (truth) {
    const BinauralTruth &t = *truth;
    auto snr = [](const AudioBuffer &sig, const AudioBuffer &noise) {
      return core::PowerToDb(core::MeanSquare(sig.samples())) -
             core::PowerToDb(core::MeanSquare(noise.samples()));
    };
    const AudioBuffer sig = (t.signal_left + t.signal_right) * k;
    const AudioBuffer noise = (t.noise_left + t.noise_right) * k;
    const double out = snr(sig, noise);
    const double best = std::max(snr(t.signal_left, t.noise_left),
                                 snr(t.signal_right, t.noise_right));
    if (std::isfinite(out) && std::isfinite(best)) r.snr_gain_db = out - best;
  }
  return r;
}

json_util::OrderedJson GroundTruthSidecar(const ScenarioSpec &s, const MicPair &p,
                                          const core::CalibrationRef &calib) {
  using json_util::OrderedJson;
  auto describe = [&](const AudioBuffer &b) {
    OrderedJson c;
    const auto lvl = core::AWeightedLevel(b, calib);
    c["dba"] = lvl ? OrderedJson(*lvl) : OrderedJson(nullptr);
    const core::PowerSpectrum ps = core::WelchSpectrum(b);
    auto band = [&](double lo, double hi) -> OrderedJson {
      const double pw = ps.BandPower(lo, hi);
      if (!(pw > 0)) return nullptr;
      return core::MeanSquareToDb(pw, calib);
    };
    c["band_0_1000_db"] = band(0, 1000);
    c["band_0_1500_db"] = band(0, 1500);
    c["band_full_db"] = band(0, s.sample_rate / 2.0);
    return c;
  };
  OrderedJson j;
  j["scenario"] = s.name;
  j["sample_rate"] = s.sample_rate;
  j["frames"] = p.inner.frames();
  j["channels"] = {"inner", "outer"};
  j["whisper_level"] = s.whisper_level;
  j["noise_level"] = s.noise_level;
  j["anc_on"] = s.anc_on;
  const GroundTruth &g = p.ground_truth;
  OrderedJson comp;
  comp["clean_whisper_at_inner"] = describe(g.clean_whisper_at_inner);
  comp["noise_at_inner"] = describe(g.noise_at_inner);
  comp["clean_whisper_at_outer"] = describe(g.clean_whisper_at_outer);
  comp["noise_at_outer"] = describe(g.noise_at_outer);
  comp["echo_at_inner"] = describe(g.echo_at_inner);
  comp["events_at_inner"] = describe(g.events_at_inner);
  j["components"] = comp;
  j["spec"] = ScenarioToJson(s);
  return j;
}

void WriteMicPair(const std::string &stem, const ScenarioSpec &s, const MicPair &p,
                  const core::CalibrationRef &calib) {
  core::WriteWav(stem + ".wav", AudioBuffer::Stereo(p.inner, p.outer),
                 core::WavFormat::kFloat32);
  core::WriteFileBytes(stem + ".json", json_util::Dump(GroundTruthSidecar(s, p, calib)));
}

}  // namespace inear::channel
