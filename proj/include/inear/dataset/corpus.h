// dataset/corpus.h

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

#ifndef INEAR_DATASET_CORPUS_H_
#define INEAR_DATASET_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "inear/channel/channel_profile.h"
#include "inear/core/audio_buffer.h"
#include "inear/json_util.h"

namespace inear::dataset {

struct ManifestEntry {
  std::string audio_path;  // as written; relative paths resolve against base_dir
  std::string transcript;  // verbatim
  std::string language_tag;
  std::optional<std::string> speaker_id;
};

/// A manifest entry whose audio file could not be found.
struct ManifestIssue {
  std::size_t line = 0;  // 1-based
  std::string audio_path;
  std::string message;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  std::string base_dir;
  std::vector<ManifestIssue> missing;

  std::string Resolve(const ManifestEntry &e) const;
};

/// Parses JSON-lines text.  Blank lines are skipped.  Throws ConfigError with
/// "origin:line N" context for syntax errors, unknown keys, empty transcripts
/// and duplicate audio paths.
CorpusManifest ParseManifest(const std::string &text, const std::string &base_dir,
                             const std::string &origin = "manifest");

/// Reads and parses `path`; relative audio paths resolve against its
/// directory.  Entries whose audio file does not exist are listed in
/// `missing` but kept.
CorpusManifest LoadManifest(const std::string &path);

std::string ManifestToJsonl(const CorpusManifest &manifest);

struct BcSimConfig {
  double cutoff_hz = 2000.0;
  int order = 8;
  bool also_apply_occlusion = false;

  void Validate(int sample_rate = 0, const std::string &path = "bc_sim") const;
};

BcSimConfig BcSimConfigFromJson(const json_util::Json &j, const std::string &path);
json_util::OrderedJson BcSimConfigToJson(const BcSimConfig &c);

/// Butterworth low-pass per channel, optionally preceded by the occlusion
/// boost of `profile`.
core::AudioBuffer BcSimulate(const core::AudioBuffer &buffer, const BcSimConfig &config,
                             const channel::ChannelProfile &profile =
                                 channel::ChannelProfile::Default());

struct FileReport {
  std::string audio_path;   // from the input manifest
  std::string output_path;  // relative to out_dir; empty on failure
  std::string error;        // empty on success
  std::vector<std::optional<double>> pre_db, post_db;  // per report band
  std::optional<double> pre_level_db, post_level_db;   // full band

  bool ok() const { return error.empty(); }
};

struct SimulationReport {
  BcSimConfig config;
  std::vector<FileReport> files;  // manifest order

  std::size_t failures() const;
  json_util::OrderedJson ToJson() const;
};

/// Filters every entry into out_dir (float WAV at the entry's relative path,
/// or its file name for absolute paths) and writes out_dir/manifest.jsonl
/// for the successful entries plus out_dir/report.json.  Per-file failures
/// are itemized in the report; processing continues.
SimulationReport BcSimulateCorpus(const CorpusManifest &manifest,
                                  const BcSimConfig &config,
                                  const std::string &out_dir, int parallel = 1,
                                  const channel::ChannelProfile &profile =
                                      channel::ChannelProfile::Default());

}  // namespace inear::dataset

#endif  // INEAR_DATASET_CORPUS_H_
