// channel/channel_profile.cc

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

#include "inear/channel/channel_profile.h"

#include "inear/error.h"

namespace inear::channel {

using core::BandGainProfile;
using json_util::Json;
using json_util::OrderedJson;

ChannelProfile ChannelProfile::Default() {
  ChannelProfile p;
  p.occlusion_boost = BandGainProfile({{1000, 10}, {1500, 0}});
  p.bc_rolloff = BandGainProfile({{1500, 0}, {2000, -3}, {4500, -42}, {8000, -60}});
  p.passive_attenuation = BandGainProfile::Flat(-2.0);
  p.anc_residual = BandGainProfile({{1000, -30}, {3000, 0}});
  return p;
}

BandGainProfile ChannelProfile::BoneConductionPath() const {
  return occlusion_boost + bc_rolloff;
}

BandGainProfile ChannelProfile::ExternalPath(bool anc_on) const {
  return anc_on ? passive_attenuation + anc_residual : passive_attenuation;
}

void ChannelProfile::Validate() const {
  if (occlusion_boost.empty() || bc_rolloff.empty() ||
      passive_attenuation.empty() || anc_residual.empty())
    throw ConfigError("channel", "profiles must not be empty");
  if (!(deformation_low_hz > 0 && deformation_high_hz > deformation_low_hz))
    throw ConfigError("channel.deformation_band", "need 0 < low < high");
  if (echo_taps < 1 || echo_taps > 4096)
    throw ConfigError("channel.echo_taps", "must be in [1, 4096]");
}

BandGainProfile ProfileFromJson(const Json &j, const std::string &path) {
  if (!j.is_array() || j.empty())
    throw ConfigError(path, "expected a non-empty array of [hz, db] pairs");
  std::vector<core::GainPoint> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json &e = j[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ConfigError(json_util::Index(path, i), "expected [hz, db]");
    pts.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  try {
    return BandGainProfile(std::move(pts));
  } catch (const InvalidArgument &e) {
    throw ConfigError(path, e.what());
  }
}

OrderedJson ProfileToJson(const BandGainProfile &p) {
  OrderedJson a = OrderedJson::array();
  for (const auto &pt : p.points()) a.push_back({pt.hz, pt.db});
  return a;
}

ChannelProfile ChannelProfileFromJson(const Json &j, const ChannelProfile &base,
                                      const std::string &path) {
  json_util::RejectUnknownKeys(
      j,
      {"occlusion_boost", "bc_rolloff", "passive_attenuation", "anc_residual",
       "deformation_band", "echo_gain_db", "echo_taps"},
      path);
  ChannelProfile p = base;
  auto prof = [&](const char *key, BandGainProfile &out) {
    if (j.contains(key)) out = ProfileFromJson(j.at(key), json_util::Join(path, key));
  };
  prof("occlusion_boost", p.occlusion_boost);
  prof("bc_rolloff", p.bc_rolloff);
  prof("passive_attenuation", p.passive_attenuation);
  prof("anc_residual", p.anc_residual);
  if (j.contains("deformation_band")) {
    const Json &b = j.at("deformation_band");
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
      throw ConfigError(json_util::Join(path, "deformation_band"),
                        "expected [low_hz, high_hz]");
    p.deformation_low_hz = b[0].get<double>();
    p.deformation_high_hz = b[1].get<double>();
  }
  p.echo_gain_db = json_util::GetNumberOr(j, "echo_gain_db", p.echo_gain_db, path);
  p.echo_taps = static_cast<int>(json_util::GetIntOr(j, "echo_taps", p.echo_taps, path));
  p.Validate();
  return p;
}

OrderedJson ChannelProfileToJson(const ChannelProfile &p) {
  OrderedJson j;
  j["occlusion_boost"] = ProfileToJson(p.occlusion_boost);
  j["bc_rolloff"] = ProfileToJson(p.bc_rolloff);
  j["passive_attenuation"] = ProfileToJson(p.passive_attenuation);
  j["anc_residual"] = ProfileToJson(p.anc_residual);
  j["deformation_band"] = {p.deformation_low_hz, p.deformation_high_hz};
  j["echo_gain_db"] = p.echo_gain_db;
  j["echo_taps"] = p.echo_taps;
  return j;
}

}  // namespace inear::channel
