// enhance/gate.h

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

#ifndef INEAR_ENHANCE_GATE_H_
#define INEAR_ENHANCE_GATE_H_

#include <string>
#include <vector>

#include "inear/channel/channel_profile.h"
#include "inear/core/audio_buffer.h"
#include "inear/core/band_profile.h"
#include "inear/core/stft.h"

namespace inear::enhance {

struct GateConfig {
  /// Expected inner-minus-outer level of external sound, dB per frequency.
  core::BandGainProfile compensation = CompensationFor(
      channel::ChannelProfile::Default(), true);
  double dominance_margin = 0.0;
  double floor_db = -40.0;
  double hysteresis_db = 6.0;
  int hold_frames = 4;
  int window_size = core::kDefaultWindow;
  int hop = core::kDefaultHop;

  void Validate() const;

  static core::BandGainProfile CompensationFor(
      const channel::ChannelProfile &profile, bool anc_on);
};

/// Per-bin open/closed state across frames.  A closed bin opens when
///   excess = dB|inner| - dB|outer| - compensation(f) - margin > hysteresis
/// and an open bin stays open while excess > 0 or until it has been open for
/// hold_frames frames.  With hysteresis 0 this is the plain strict test.
class GateState {
 public:
  GateState(const GateConfig &config, std::size_t bins, double bin_hz);

  /// Gains in dB for one frame pair: 0 for open bins, floor for closed ones.
  std::vector<double> Step(const core::SpectroFrame &inner,
                           const core::SpectroFrame &outer);

 private:
  GateConfig config_;
  std::vector<double> comp_db_;
  std::vector<bool> open_;
  std::vector<int> age_;
};

struct GateMask {
  double bin_hz = 0.0;
  std::vector<std::vector<double>> gain_db;  // [frame][bin]

  std::size_t frames() const { return gain_db.size(); }
  std::size_t bins() const { return gain_db.empty() ? 0 : gain_db[0].size(); }
  double OpenFraction() const;
  /// CSV with header frame_index,band_hz,gain_db.
  std::string ToCsv() const;
};

struct GateResult {
  core::AudioBuffer output;
  GateMask mask;
};

GateResult DoubleNoiseGate(const core::AudioBuffer &inner,
                           const core::AudioBuffer &outer,
                           const GateConfig &config = {});

/// Applies a mask from DoubleNoiseGate to another signal of the same length,
/// e.g. one ground-truth component of the inner mic.
core::AudioBuffer ApplyGateMask(const core::AudioBuffer &x, const GateMask &mask,
                                const GateConfig &config = {});

}  // namespace inear::enhance

#endif  // INEAR_ENHANCE_GATE_H_
