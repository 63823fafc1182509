// tests/fixtures.h

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

#ifndef INEAR_TESTS_FIXTURES_H_
#define INEAR_TESTS_FIXTURES_H_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "inear/channel/generators.h"
#include "inear/core/wav.h"
#include "inear/json_util.h"

namespace inear::testing {

inline std::filesystem::path TempDir(const std::string &tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto p = std::filesystem::temp_directory_path() /
           ("inear_" + tag + "_" + std::to_string(rng() % 1000000000));
  std::filesystem::create_directories(p);
  return p;
}

/// Temporary directory removed on scope exit.
struct ScopedDir {
  explicit ScopedDir(const std::string &tag) : path(TempDir(tag)) {}
  ~ScopedDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  ScopedDir(const ScopedDir &) = delete;
  ScopedDir &operator=(const ScopedDir &) = delete;

  std::filesystem::path path;
};

/// Fifteen everyday Japanese phrases.
inline const std::vector<std::string> &Phrases() {
  static const std::vector<std::string> p = {
      "おはようございます", "こんにちは", "こんばんは", "ありがとうございます",
      "すみません", "お願いします", "はい", "いいえ", "わかりました", "大丈夫です",
      "ちょっと待ってください", "もう一度お願いします", "どうぞ", "失礼します",
      "さようなら"};
  return p;
}

/// Writes `count` whisper-shaped WAVs plus manifest.jsonl into dir and
/// returns the manifest path.
inline std::string WriteWhisperCorpus(const std::filesystem::path &dir, int count,
                                      double seconds = 1.0) {
  std::filesystem::create_directories(dir / "audio");
  std::string manifest;
  for (int i = 0; i < count; ++i) {
    const std::string rel = "audio/p" + std::to_string(i) + ".wav";
    auto x = channel::GenerateNoise(channel::NoiseShape::kWhisper, seconds, 500 + i);
    core::WriteWav((dir / rel).string(), x * 0.1);
    json_util::OrderedJson j;
    j["audio_path"] = rel;
    j["transcript"] = Phrases()[i % Phrases().size()];
    j["language_tag"] = "ja";
    j["speaker_id"] = "s01";
    manifest += j.dump() + "\n";
  }
  const auto path = dir / "manifest.jsonl";
  core::WriteFileBytes(path.string(), manifest);
  return path.string();
}

}  // namespace inear::testing

#endif  // INEAR_TESTS_FIXTURES_H_
