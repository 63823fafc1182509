// channel/generators.h

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

#ifndef INEAR_CHANNEL_GENERATORS_H_
#define INEAR_CHANNEL_GENERATORS_H_

#include <cstdint>
#include <string>

#include "inear/core/audio_buffer.h"
#include "inear/core/band_profile.h"

namespace inear::channel {

enum class NoiseShape {
  kWhite,
  kPink,
  kWhisper,  // pink, emphasis 300 Hz - 4 kHz
  kAmbient,  // pink with a gentle high-frequency tilt
  kSpeech,   // long-term speech spectrum with 4 Hz syllabic modulation
};

NoiseShape ParseNoiseShape(const std::string &name);
std::string NoiseShapeName(NoiseShape shape);

/// Spectral shape applied to white Gaussian noise (empty for kWhite).
core::BandGainProfile ShapeProfile(NoiseShape shape);

/// Seeded shaped noise; unit-free amplitude, calibrate before use.
core::AudioBuffer GenerateNoise(NoiseShape shape, double seconds,
                                uint64_t seed,
                                int sample_rate = core::kDefaultSampleRate);

/// splitmix64 step, used to derive independent seeds from one rng_seed.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

}  // namespace inear::channel

#endif  // INEAR_CHANNEL_GENERATORS_H_
