// channel/simulator.h

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

#ifndef INEAR_CHANNEL_SIMULATOR_H_
#define INEAR_CHANNEL_SIMULATOR_H_

#include <optional>
#include <string>
#include <vector>

#include "inear/channel/channel_profile.h"
#include "inear/channel/scenario.h"
#include "inear/core/level.h"

namespace inear::channel {

struct OuterMic {
  core::AudioBuffer mic;
  core::AudioBuffer whisper;
  core::AudioBuffer noise;
};

struct InnerMic {
  core::AudioBuffer mic;
  core::AudioBuffer whisper;
  core::AudioBuffer noise;
  core::AudioBuffer echo;
  core::AudioBuffer events;
  core::AudioBuffer playback;  // earphone output driving the echo path
};

struct GroundTruth {
  core::AudioBuffer clean_whisper_at_inner;
  core::AudioBuffer noise_at_inner;
  core::AudioBuffer clean_whisper_at_outer;
  core::AudioBuffer noise_at_outer;
  core::AudioBuffer echo_at_inner;
  core::AudioBuffer events_at_inner;
};

struct MicPair {
  core::AudioBuffer inner;
  core::AudioBuffer outer;
  core::AudioBuffer playback;  // empty-length zeros when none
  GroundTruth ground_truth;
};

/// Scenario levels are A-weighted levels at the outer microphone.
OuterMic SimulateOuterMic(const ScenarioSpec &scenario,
                          const ChannelProfile &profile = ChannelProfile::Default(),
                          const core::CalibrationRef &calib = {});
InnerMic SimulateInnerMic(const ScenarioSpec &scenario,
                          const ChannelProfile &profile = ChannelProfile::Default(),
                          const core::CalibrationRef &calib = {});
MicPair SimulateScenario(const ScenarioSpec &scenario,
                         const ChannelProfile &profile = ChannelProfile::Default(),
                         const core::CalibrationRef &calib = {});

/// Seeded in-ear echo path: h[k] ~ N(0,1) exp(-k/16), unit energy, scaled
/// by gain_db.
std::vector<double> EchoPath(uint64_t seed, int taps, double gain_db);

/// Sum of band-limited raised-cosine pulses; amplitude is absolute.
core::AudioBuffer DeformationPulses(const DeformationTrack &track,
                                    std::size_t frames, int sample_rate,
                                    double amplitude);

struct BinauralTruth {
  core::AudioBuffer signal_left, noise_left;
  core::AudioBuffer signal_right, noise_right;
};

struct BinauralResult {
  core::AudioBuffer combined;
  std::optional<double> snr_gain_db;  // vs the better single side
};

/// (left + right) / sqrt(2).
BinauralResult BinauralCombine(const core::AudioBuffer &left,
                               const core::AudioBuffer &right,
                               const std::optional<BinauralTruth> &truth = {});

/// Component levels written next to a simulated WAV.
json_util::OrderedJson GroundTruthSidecar(const ScenarioSpec &scenario,
                                          const MicPair &pair,
                                          const core::CalibrationRef &calib);

/// Writes <stem>.wav (channel 0 inner, 1 outer) and <stem>.json.
void WriteMicPair(const std::string &stem, const ScenarioSpec &scenario,
                  const MicPair &pair, const core::CalibrationRef &calib);

}  // namespace inear::channel

#endif  // INEAR_CHANNEL_SIMULATOR_H_
