// dataset/corpus.cc

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

#include "inear/dataset/corpus.h"

#include <filesystem>
#include <set>
#include <sstream>

#include "inear/core/filters.h"
#include "inear/core/parallel.h"
#include "inear/core/stft.h"
#include "inear/core/wav.h"
#include "inear/error.h"
#include "inear/eval/band_levels.h"

namespace inear::dataset {

namespace fs = std::filesystem;

std::string CorpusManifest::Resolve(const ManifestEntry &e) const {
  const fs::path p(e.audio_path);
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (fs::path(base_dir) / p).string();
}

namespace {

std::string RequireString(const json_util::Json &j, const char *key,
                          const std::string &path) {
  if (!j.contains(key)) throw ConfigError(json_util::Join(path, key), "missing");
  if (!j[key].is_string())
    throw ConfigError(json_util::Join(path, key), "expected a string");
  return j[key].get<std::string>();
}

ManifestEntry EntryFromJson(const json_util::Json &j, const std::string &path) {
  json_util::RejectUnknownKeys(
      j, {"audio_path", "transcript", "language_tag", "speaker_id"}, path);
  ManifestEntry e;
  e.audio_path = RequireString(j, "audio_path", path);
  e.transcript = RequireString(j, "transcript", path);
  e.language_tag = RequireString(j, "language_tag", path);
  if (j.contains("speaker_id") && !j["speaker_id"].is_null())
    e.speaker_id = RequireString(j, "speaker_id", path);
  if (e.audio_path.empty())
    throw ConfigError(json_util::Join(path, "audio_path"), "must be non-empty");
  if (e.transcript.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ConfigError(json_util::Join(path, "transcript"), "must be non-empty");
  if (e.language_tag.empty())
    throw ConfigError(json_util::Join(path, "language_tag"), "must be non-empty");
  return e;
}

// Output location inside out_dir for an entry.
fs::path OutputRelative(const ManifestEntry &e) {
  fs::path p = fs::path(e.audio_path).lexically_normal();
  bool escapes = p.is_absolute();
  for (const auto &part : p)
    if (part == "..") escapes = true;
  if (escapes) p = p.filename();
  p.replace_extension(".wav");
  return p;
}

}  // namespace

CorpusManifest ParseManifest(const std::string &text, const std::string &base_dir,
                             const std::string &origin) {
  CorpusManifest m;
  m.base_dir = base_dir;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = origin + ":line " + std::to_string(n);
    json_util::Json j;
    try {
      j = json_util::Json::parse(line);
    } catch (const json_util::Json::parse_error &e) {
      throw ConfigError(where, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError(where, "expected an object");
    ManifestEntry e = EntryFromJson(j, where);
    if (!seen.insert(e.audio_path).second)
      throw ConfigError(json_util::Join(where, "audio_path"),
                        "duplicate audio_path \"" + e.audio_path + "\"");
    m.entries.push_back(std::move(e));
  }
  return m;
}

CorpusManifest LoadManifest(const std::string &path) {
  const std::string text = core::ReadFileBytes(path);
  CorpusManifest m =
      ParseManifest(text, fs::path(path).parent_path().string(), path);
  std::size_t line = 0;
  std::istringstream in(text);
  std::string raw;
  std::size_t idx = 0;
  while (idx < m.entries.size() && std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    const ManifestEntry &e = m.entries[idx++];
    std::error_code ec;
    if (!fs::is_regular_file(m.Resolve(e), ec))
      m.missing.push_back({line, e.audio_path, "audio file not found: " + m.Resolve(e)});
  }
  return m;
}

std::string ManifestToJsonl(const CorpusManifest &manifest) {
  std::string out;
  for (const auto &e : manifest.entries) {
    json_util::OrderedJson j;
    j["audio_path"] = e.audio_path;
    j["transcript"] = e.transcript;
    j["language_tag"] = e.language_tag;
    if (e.speaker_id) j["speaker_id"] = *e.speaker_id;
    out += j.dump() + "\n";
  }
  return out;
}

void BcSimConfig::Validate(int sample_rate, const std::string &path) const {
  if (!(cutoff_hz > 0)) throw ConfigError(json_util::Join(path, "cutoff"), "must be positive");
  if (sample_rate > 0 && !(cutoff_hz < sample_rate / 2.0))
    throw ConfigError(json_util::Join(path, "cutoff"), "must be below Nyquist");
  if (order < 2 || order % 2 != 0)
    throw ConfigError(json_util::Join(path, "order"), "must be a positive even integer");
}

BcSimConfig BcSimConfigFromJson(const json_util::Json &j, const std::string &path) {
  json_util::RequireObject(j, path);
  json_util::RejectUnknownKeys(j, {"cutoff", "order", "also_apply_occlusion"}, path);
  BcSimConfig c;
  c.cutoff_hz = json_util::GetNumberOr(j, "cutoff", c.cutoff_hz, path);
  c.order = static_cast<int>(json_util::GetIntOr(j, "order", c.order, path));
  c.also_apply_occlusion =
      json_util::GetBoolOr(j, "also_apply_occlusion", c.also_apply_occlusion, path);
  c.Validate(0, path);
  return c;
}

json_util::OrderedJson BcSimConfigToJson(const BcSimConfig &c) {
  json_util::OrderedJson j;
  j["cutoff"] = c.cutoff_hz;
  j["order"] = c.order;
  j["also_apply_occlusion"] = c.also_apply_occlusion;
  return j;
}

core::AudioBuffer BcSimulate(const core::AudioBuffer &buffer, const BcSimConfig &config,
                             const channel::ChannelProfile &profile) {
  config.Validate(buffer.sample_rate());
  std::vector<std::vector<double>> channels;
  for (int c = 0; c < buffer.channel_count(); ++c) {
    core::AudioBuffer ch = buffer.ChannelBuffer(c);
    if (config.also_apply_occlusion) ch = core::ApplyProfile(ch, profile.occlusion_boost);
    ch = core::ButterworthFilter(ch, core::FilterKind::kLowpass, config.cutoff_hz,
                                 config.order);
    auto s = ch.samples();
    channels.emplace_back(s.begin(), s.end());
  }
  if (channels.empty()) return buffer;
  return core::AudioBuffer(std::move(channels), buffer.sample_rate());
}

std::size_t SimulationReport::failures() const {
  std::size_t n = 0;
  for (const auto &f : files) n += !f.ok();
  return n;
}

json_util::OrderedJson SimulationReport::ToJson() const {
  json_util::OrderedJson j;
  j["config"] = BcSimConfigToJson(config);
  j["file_count"] = files.size();
  j["failures"] = failures();
  auto arr = json_util::OrderedJson::array();
  for (const auto &f : files) {
    json_util::OrderedJson e;
    e["audio_path"] = f.audio_path;
    if (f.ok()) {
      e["output_path"] = f.output_path;
      e["pre_level_db"] = eval::LevelToJson(f.pre_level_db);
      e["post_level_db"] = eval::LevelToJson(f.post_level_db);
      auto bands = json_util::OrderedJson::array();
      for (std::size_t b = 0; b < f.pre_db.size(); ++b)
        bands.push_back({{"pre_db", eval::LevelToJson(f.pre_db[b])},
                         {"post_db", eval::LevelToJson(f.post_db[b])}});
      e["bands"] = bands;
    } else {
      e["error"] = f.error;
    }
    arr.push_back(e);
  }
  j["files"] = arr;
  return j;
}

namespace {

void MeasureInto(const core::AudioBuffer &b, std::vector<std::optional<double>> &bands,
                 std::optional<double> &full) {
  const core::AudioBuffer mono = b.channel_count() == 1 ? b : b.ChannelBuffer(0);
  bands = eval::BandLevels(mono, eval::ReportBands(mono.sample_rate()));
  const double ms = core::MeanSquare(mono.samples());
  full = ms > 0 ? std::optional<double>(core::MeanSquareToDb(ms, {})) : std::nullopt;
}

}  // namespace

SimulationReport BcSimulateCorpus(const CorpusManifest &manifest,
                                  const BcSimConfig &config, const std::string &out_dir,
                                  int parallel, const channel::ChannelProfile &profile) {
  config.Validate();
  SimulationReport report;
  report.config = config;
  report.files.resize(manifest.entries.size());
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

  std::set<std::string> outputs;
  std::vector<fs::path> rel(manifest.entries.size());
  for (std::size_t i = 0; i < rel.size(); ++i) {
    rel[i] = OutputRelative(manifest.entries[i]);
    if (!outputs.insert(rel[i].string()).second) rel[i].clear();
  }

  core::ParallelFor(manifest.entries.size(), parallel, [&](std::size_t i) {
    const ManifestEntry &e = manifest.entries[i];
    FileReport &f = report.files[i];
    f.audio_path = e.audio_path;
    if (rel[i].empty()) {
      f.error = "output path collides with an earlier entry";
      return;
    }
    try {
      const core::AudioBuffer in = core::ReadWav(manifest.Resolve(e));
      if (in.empty()) throw IoError("empty audio");
      const core::AudioBuffer out = BcSimulate(in, config, profile);
      MeasureInto(in, f.pre_db, f.pre_level_db);
      MeasureInto(out, f.post_db, f.post_level_db);
      const fs::path dest = fs::path(out_dir) / rel[i];
      fs::create_directories(dest.parent_path());
      core::WriteWav(dest.string(), out, core::WavFormat::kFloat32);
      f.output_path = rel[i].generic_string();
    } catch (const Error &err) {
      f = FileReport{};
      f.audio_path = e.audio_path;
      f.error = err.what();
    } catch (const fs::filesystem_error &err) {
      f = FileReport{};
      f.audio_path = e.audio_path;
      f.error = err.what();
    }
  });

  CorpusManifest out;
  out.base_dir = out_dir;
  for (std::size_t i = 0; i < report.files.size(); ++i) {
    if (!report.files[i].ok()) continue;
    ManifestEntry e = manifest.entries[i];
    e.audio_path = report.files[i].output_path;
    out.entries.push_back(std::move(e));
  }
  core::WriteFileBytes((fs::path(out_dir) / "manifest.jsonl").string(),
                       ManifestToJsonl(out));
  core::WriteFileBytes((fs::path(out_dir) / "report.json").string(),
                       json_util::Dump(report.ToJson()));
  return report;
}

}  // namespace inear::dataset
