// channel/generators.cc

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

#include "inear/channel/generators.h"

#include <cmath>
#include <numbers>
#include <random>

#include "inear/core/stft.h"
#include "inear/error.h"

namespace inear::channel {

using core::AudioBuffer;
using core::BandGainProfile;

NoiseShape ParseNoiseShape(const std::string &name) {
  if (name == "white") return NoiseShape::kWhite;
  if (name == "pink") return NoiseShape::kPink;
  if (name == "whisper") return NoiseShape::kWhisper;
  if (name == "ambient") return NoiseShape::kAmbient;
  if (name == "speech") return NoiseShape::kSpeech;
  throw InvalidArgument("unknown generator shape '" + name + "'");
}

std::string NoiseShapeName(NoiseShape shape) {
  switch (shape) {
    case NoiseShape::kWhite: return "white";
    case NoiseShape::kPink: return "pink";
    case NoiseShape::kWhisper: return "whisper";
    case NoiseShape::kAmbient: return "ambient";
    case NoiseShape::kSpeech: return "speech";
  }
  return "white";
}

namespace {

// -3.01 dB per octave.
BandGainProfile Pink() {
  const double top = 96000.0;
  return BandGainProfile({{1.0, 0.0}, {top, -10.0 * std::log10(top)}});
}

}  // namespace

BandGainProfile ShapeProfile(NoiseShape shape) {
  switch (shape) {
    case NoiseShape::kWhite:
      return BandGainProfile();
    case NoiseShape::kPink:
      return Pink();
    case NoiseShape::kWhisper:
      return Pink() + BandGainProfile({{150, -30}, {300, 0}, {4000, 0}, {7000, -20}});
    case NoiseShape::kAmbient:
      return Pink() + BandGainProfile({{100, -20}, {200, 0}, {1000, 0}, {4000, 4}});
    case NoiseShape::kSpeech:
      return Pink() + BandGainProfile({{60, -30}, {120, 0}, {500, 0}, {4000, -6},
                                       {8000, -20}});
  }
  return BandGainProfile();
}

uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

AudioBuffer GenerateNoise(NoiseShape shape, double seconds, uint64_t seed,
                          int sample_rate) {
  if (!(seconds >= 0)) throw InvalidArgument("generator: negative duration");
  const std::size_t n = static_cast<std::size_t>(std::llround(seconds * sample_rate));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(n);
  for (double &v : x) v = dist(rng);
  AudioBuffer out(std::move(x), sample_rate);
  if (shape == NoiseShape::kWhite || n == 0) return out;
  out = core::ApplyProfile(out, ShapeProfile(shape));
  if (shape == NoiseShape::kSpeech) {
    const double phase = std::uniform_real_distribution<double>(
        0.0, 2.0 * std::numbers::pi)(rng);
    auto s = out.samples();
    for (std::size_t i = 0; i < n; ++i)
      s[i] *= 0.55 + 0.45 * std::sin(2.0 * std::numbers::pi * 4.0 * i /
                                         sample_rate + phase);
  }
  return out;
}

}  // namespace inear::channel
