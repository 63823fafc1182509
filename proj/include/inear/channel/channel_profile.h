// channel/channel_profile.h

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

#ifndef INEAR_CHANNEL_CHANNEL_PROFILE_H_
#define INEAR_CHANNEL_CHANNEL_PROFILE_H_

#include "inear/core/band_profile.h"
#include "inear/json_util.h"

namespace inear::channel {

/// Acoustic model of the sealed ear canal as seen from the inner microphone.
/// Own-voice whisper reaches it through occlusion_boost and bc_rolloff;
/// external sound through passive_attenuation, plus anc_residual when ANC is
/// running.
struct ChannelProfile {
  core::BandGainProfile occlusion_boost;
  core::BandGainProfile bc_rolloff;
  core::BandGainProfile passive_attenuation;
  core::BandGainProfile anc_residual;
  double deformation_low_hz = 5.0;
  double deformation_high_hz = 100.0;
  double echo_gain_db = -20.0;
  int echo_taps = 64;

  static ChannelProfile Default();

  core::BandGainProfile BoneConductionPath() const;
  core::BandGainProfile ExternalPath(bool anc_on) const;

  void Validate() const;
};

core::BandGainProfile ProfileFromJson(const json_util::Json &j,
                                      const std::string &path);
json_util::OrderedJson ProfileToJson(const core::BandGainProfile &p);

/// Starts from `base` and replaces the fields present in `j`.
ChannelProfile ChannelProfileFromJson(const json_util::Json &j,
                                      const ChannelProfile &base,
                                      const std::string &path);
json_util::OrderedJson ChannelProfileToJson(const ChannelProfile &p);

}  // namespace inear::channel

#endif  // INEAR_CHANNEL_CHANNEL_PROFILE_H_
