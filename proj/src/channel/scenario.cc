// channel/scenario.cc

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

#include "inear/channel/scenario.h"

#include <cmath>
#include <filesystem>

#include "inear/core/wav.h"
#include "inear/error.h"

namespace inear::channel {

using json_util::Join;
using json_util::Json;
using json_util::OrderedJson;

SourceSpec SourceSpec::Generator(NoiseShape shape, std::optional<uint64_t> seed) {
  SourceSpec s;
  s.kind = Kind::kGenerator;
  s.shape = shape;
  s.seed = seed;
  return s;
}

SourceSpec SourceSpec::FromBuffer(core::AudioBuffer buffer) {
  SourceSpec s;
  s.kind = Kind::kBuffer;
  s.buffer = std::move(buffer);
  return s;
}

SourceSpec SourceSpec::Silent() {
  SourceSpec s;
  s.kind = Kind::kSilent;
  return s;
}

void DeformationTrack::Validate(const std::string &path) const {
  for (std::size_t i = 0; i < onsets.size(); ++i) {
    if (!std::isfinite(onsets[i]) || onsets[i] < 0)
      throw ConfigError(json_util::Index(Join(path, "onsets"), i), "must be >= 0");
    if (i > 0 && !(onsets[i] > onsets[i - 1]))
      throw ConfigError(json_util::Index(Join(path, "onsets"), i),
                        "onsets must be strictly increasing");
  }
  if (!(pulse_width > 0)) throw ConfigError(Join(path, "pulse_width"), "must be > 0");
  if (!(pulse_amplitude > 0))
    throw ConfigError(Join(path, "pulse_amplitude"), "must be > 0");
  if (!(band_low_hz > 0 && band_high_hz > band_low_hz))
    throw ConfigError(Join(path, "pulse_band"), "need 0 < low < high");
}

void ScenarioSpec::Validate(const std::string &path) const {
  auto level = [&](double v, const char *key) {
    if (!std::isfinite(v) || v < 0 || v > 100)
      throw ConfigError(Join(path, key), "level must be within [0, 100] dB(A)");
  };
  level(whisper_level, "whisper_level");
  level(noise_level, "noise_level");
  if (!std::isfinite(duration) || !(duration > 0))
    throw ConfigError(Join(path, "duration"), "must be > 0");
  if (duration > 3600) throw ConfigError(Join(path, "duration"), "must be <= 3600 s");
  if (sample_rate < 1000 || sample_rate > 192000)
    throw ConfigError(Join(path, "sample_rate"), "must be within [1000, 192000]");
  if (playback) level(playback->level_dba, "playback.level");
  if (events) {
    events->Validate(Join(path, "events"));
    if (!events->onsets.empty() && events->onsets.back() >= duration)
      throw ConfigError(Join(path, "events.onsets"), "onset beyond duration");
    if (events->band_high_hz >= sample_rate / 2.0)
      throw ConfigError(Join(path, "events.pulse_band"), "above Nyquist");
  }
}

namespace {

SourceSpec SourceFromJson(const Json &j, const std::string &path,
                          NoiseShape default_shape, const std::string &base_dir) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "silent") return SourceSpec::Silent();
    if (s == "generator") return SourceSpec::Generator(default_shape);
    throw ConfigError(path, "expected \"silent\", \"generator\" or an object");
  }
  json_util::RequireObject(j, path);
  if (j.size() != 1)
    throw ConfigError(path, "source object needs exactly one of generator/wav");
  if (j.contains("generator")) {
    const std::string gp = Join(path, "generator");
    const Json &g = j.at("generator");
    json_util::RejectUnknownKeys(g, {"shape", "seed"}, gp);
    NoiseShape shape = default_shape;
    if (g.contains("shape")) {
      try {
        shape = ParseNoiseShape(json_util::GetStringOr(g, "shape", "", gp));
      } catch (const InvalidArgument &e) {
        throw ConfigError(Join(gp, "shape"), e.what());
      }
    }
    std::optional<uint64_t> seed;
    if (g.contains("seed")) seed = json_util::GetSeedOr(g, "seed", 0, gp);
    return SourceSpec::Generator(shape, seed);
  }
  if (j.contains("wav")) {
    std::string p = json_util::GetStringOr(j, "wav", "", path);
    std::filesystem::path fp(p);
    if (fp.is_relative() && !base_dir.empty()) fp = std::filesystem::path(base_dir) / fp;
    SourceSpec s = SourceSpec::FromBuffer(core::ReadWav(fp.string()));
    s.wav_path = p;
    return s;
  }
  throw ConfigError(Join(path, j.begin().key()), "unknown key");
}

OrderedJson SourceToJson(const SourceSpec &s) {
  switch (s.kind) {
    case SourceSpec::Kind::kSilent:
      return "silent";
    case SourceSpec::Kind::kBuffer:
      return OrderedJson{{"wav", s.wav_path}};
    case SourceSpec::Kind::kGenerator: {
      OrderedJson g;
      g["shape"] = NoiseShapeName(s.shape);
      if (s.seed) g["seed"] = *s.seed;
      return OrderedJson{{"generator", g}};
    }
  }
  return nullptr;
}

}  // namespace

ScenarioSpec ScenarioFromJson(const Json &j, const std::string &path,
                              const std::string &base_dir) {
  json_util::RejectUnknownKeys(
      j,
      {"name", "whisper_source", "whisper_level", "noise_source", "noise_level",
       "anc_on", "playback", "events", "duration", "rng_seed", "sample_rate"},
      path);
  ScenarioSpec s;
  s.name = json_util::GetStringOr(j, "name", "", path);
  if (j.contains("whisper_source"))
    s.whisper_source = SourceFromJson(j.at("whisper_source"), Join(path, "whisper_source"),
                                      NoiseShape::kWhisper, base_dir);
  if (j.contains("noise_source"))
    s.noise_source = SourceFromJson(j.at("noise_source"), Join(path, "noise_source"),
                                    NoiseShape::kAmbient, base_dir);
  s.whisper_level = json_util::GetNumberOr(j, "whisper_level", s.whisper_level, path);
  s.noise_level = json_util::GetNumberOr(j, "noise_level", s.noise_level, path);
  s.anc_on = json_util::GetBoolOr(j, "anc_on", s.anc_on, path);
  s.duration = json_util::GetNumberOr(j, "duration", s.duration, path);
  s.rng_seed = json_util::GetSeedOr(j, "rng_seed", s.rng_seed, path);
  s.sample_rate = static_cast<int>(
      json_util::GetIntOr(j, "sample_rate", s.sample_rate, path));
  if (j.contains("playback") && !j.at("playback").is_null()) {
    const std::string pp = Join(path, "playback");
    const Json &p = j.at("playback");
    json_util::RejectUnknownKeys(p, {"source", "level"}, pp);
    PlaybackSpec pb;
    if (p.contains("source"))
      pb.source = SourceFromJson(p.at("source"), Join(pp, "source"), NoiseShape::kWhite,
                                 base_dir);
    pb.level_dba = json_util::GetNumberOr(p, "level", pb.level_dba, pp);
    s.playback = pb;
  }
  if (j.contains("events") && !j.at("events").is_null()) {
    const std::string ep = Join(path, "events");
    const Json &e = j.at("events");
    json_util::RejectUnknownKeys(e, {"onsets", "pulse_width", "pulse_amplitude", "pulse_band"},
                                 ep);
    DeformationTrack t;
    if (e.contains("onsets")) {
      const Json &o = e.at("onsets");
      if (!o.is_array()) throw ConfigError(Join(ep, "onsets"), "expected an array");
      for (std::size_t i = 0; i < o.size(); ++i) {
        if (!o[i].is_number())
          throw ConfigError(json_util::Index(Join(ep, "onsets"), i), "expected a number");
        t.onsets.push_back(o[i].get<double>());
      }
    }
    t.pulse_width = json_util::GetNumberOr(e, "pulse_width", t.pulse_width, ep);
    t.pulse_amplitude = json_util::GetNumberOr(e, "pulse_amplitude", t.pulse_amplitude, ep);
    if (e.contains("pulse_band")) {
      const Json &b = e.at("pulse_band");
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
        throw ConfigError(Join(ep, "pulse_band"), "expected [low_hz, high_hz]");
      t.band_low_hz = b[0].get<double>();
      t.band_high_hz = b[1].get<double>();
    }
    s.events = t;
  }
  s.Validate(path);
  return s;
}

OrderedJson ScenarioToJson(const ScenarioSpec &s) {
  OrderedJson j;
  j["name"] = s.name;
  j["whisper_source"] = SourceToJson(s.whisper_source);
  j["whisper_level"] = s.whisper_level;
  j["noise_source"] = SourceToJson(s.noise_source);
  j["noise_level"] = s.noise_level;
  j["anc_on"] = s.anc_on;
  if (s.playback)
    j["playback"] = {{"source", SourceToJson(s.playback->source)},
                     {"level", s.playback->level_dba}};
  else
    j["playback"] = nullptr;
  if (s.events)
    j["events"] = {{"onsets", s.events->onsets},
                   {"pulse_width", s.events->pulse_width},
                   {"pulse_amplitude", s.events->pulse_amplitude},
                   {"pulse_band", {s.events->band_low_hz, s.events->band_high_hz}}};
  else
    j["events"] = nullptr;
  j["duration"] = s.duration;
  j["rng_seed"] = s.rng_seed;
  j["sample_rate"] = s.sample_rate;
  return j;
}

}  // namespace inear::channel
