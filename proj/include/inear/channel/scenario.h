// channel/scenario.h

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

#ifndef INEAR_CHANNEL_SCENARIO_H_
#define INEAR_CHANNEL_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inear/channel/generators.h"
#include "inear/core/audio_buffer.h"
#include "inear/json_util.h"

namespace inear::channel {

/// Where a scenario component comes from.  A generator with no explicit seed
/// derives one from the scenario rng_seed.
struct SourceSpec {
  enum class Kind { kGenerator, kBuffer, kSilent };
  Kind kind = Kind::kGenerator;
  NoiseShape shape = NoiseShape::kWhisper;
  std::optional<uint64_t> seed;
  std::optional<core::AudioBuffer> buffer;
  std::string wav_path;  // informational when loaded from a file

  static SourceSpec Generator(NoiseShape shape,
                              std::optional<uint64_t> seed = std::nullopt);
  static SourceSpec FromBuffer(core::AudioBuffer buffer);
  static SourceSpec Silent();
};

struct DeformationTrack {
  std::vector<double> onsets;  // seconds, strictly increasing
  double pulse_width = 0.02;
  double pulse_amplitude = 3.0;  // peak, relative to inner whisper RMS
  double band_low_hz = 5.0;
  double band_high_hz = 100.0;

  void Validate(const std::string &path) const;
};

struct PlaybackSpec {
  SourceSpec source = SourceSpec::Generator(NoiseShape::kWhite);
  double level_dba = 60.0;
};

struct ScenarioSpec {
  std::string name;
  SourceSpec whisper_source = SourceSpec::Generator(NoiseShape::kWhisper);
  double whisper_level = 40.0;
  SourceSpec noise_source = SourceSpec::Generator(NoiseShape::kAmbient);
  double noise_level = 60.0;
  bool anc_on = false;
  std::optional<PlaybackSpec> playback;
  std::optional<DeformationTrack> events;
  double duration = 5.0;
  uint64_t rng_seed = 0;
  int sample_rate = core::kDefaultSampleRate;

  /// Throws ConfigError naming the offending field.
  void Validate(const std::string &path = "") const;
};

/// WAV paths in `j` resolve against base_dir when relative.
ScenarioSpec ScenarioFromJson(const json_util::Json &j,
                              const std::string &path,
                              const std::string &base_dir = "");
json_util::OrderedJson ScenarioToJson(const ScenarioSpec &s);

}  // namespace inear::channel

#endif  // INEAR_CHANNEL_SCENARIO_H_
