// tests/wer_table.h

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

#ifndef INEAR_TESTS_WER_TABLE_H_
#define INEAR_TESTS_WER_TABLE_H_

#include <cstddef>
#include <vector>

#include "inear/eval/wer.h"

namespace inear::testing {

struct AlignedPair {
  const char *reference;
  const char *hypothesis;
  eval::WerMode mode;
  std::size_t s, d, i;
  double rate;
};

/// Alignments worked out by hand.
inline const std::vector<AlignedPair> &HandAlignedPairs() {
  using eval::WerMode;
  static const std::vector<AlignedPair> t = {
      {"a b c", "a b c", WerMode::kToken, 0, 0, 0, 0.0},
      {"a b c", "a x c", WerMode::kToken, 1, 0, 0, 1.0 / 3},
      {"a b", "", WerMode::kToken, 0, 2, 0, 1.0},
      {"a b c d", "a c d", WerMode::kToken, 0, 1, 0, 0.25},
      {"a b", "a b c d", WerMode::kToken, 0, 0, 2, 1.0},
      {"the cat sat", "a cat sat down", WerMode::kToken, 1, 0, 1, 2.0 / 3},
      {"a b", "b a", WerMode::kToken, 2, 0, 0, 1.0},
      {"one two three four five", "one too three for", WerMode::kToken, 2, 1, 0, 0.6},
      {"x", "y z w", WerMode::kToken, 1, 0, 2, 3.0},
      {"hello world", "  hello\tworld  ", WerMode::kToken, 0, 0, 0, 0.0},
      {"こんにちは", "こんにちは", WerMode::kCharacter, 0, 0, 0, 0.0},
      {"こんにちは", "こんばんは", WerMode::kCharacter, 2, 0, 0, 0.4},
      {"ありがとう", "ありがと", WerMode::kCharacter, 0, 1, 0, 0.2},
      {"はい", "はいはい", WerMode::kCharacter, 0, 0, 2, 1.0},
      {"大丈夫です", "", WerMode::kCharacter, 0, 5, 0, 1.0},
      {"お願い します", "お願いします", WerMode::kCharacter, 0, 0, 0, 0.0},
      {"すみません", "すいません", WerMode::kCharacter, 1, 0, 0, 0.2},
      {"どうぞ", "ど う　ぞ", WerMode::kCharacter, 0, 0, 0, 0.0},
      {"わかりました", "わかりません", WerMode::kCharacter, 2, 0, 0, 2.0 / 6},
      {"失礼します", "失礼しました", WerMode::kCharacter, 1, 0, 1, 0.4},
  };
  return t;
}

}  // namespace inear::testing

#endif  // INEAR_TESTS_WER_TABLE_H_
