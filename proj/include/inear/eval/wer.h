// eval/wer.h

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

#ifndef INEAR_EVAL_WER_H_
#define INEAR_EVAL_WER_H_

#include <cstddef>
#include <string>
#include <vector>

namespace inear::eval {

enum class WerMode { kToken, kCharacter };

WerMode ParseWerMode(const std::string &name);
std::string WerModeName(WerMode mode);
/// Character mode for Japanese and Chinese tags ("ja", "ja-JP", "zh-..."),
/// token mode otherwise.
WerMode DefaultWerMode(const std::string &language_tag);

/// Token mode splits on ASCII/Unicode whitespace.  Character mode yields one
/// unit per Unicode scalar value, whitespace removed.  Throws InvalidArgument
/// for malformed UTF-8.
std::vector<std::string> Tokenize(const std::string &text, WerMode mode);

struct WerEntry {
  std::string reference, hypothesis;
  std::size_t substitutions = 0, deletions = 0, insertions = 0;
  std::size_t reference_length = 0;
  double rate = 0.0;  // (S + D + I) / N; may exceed 1

  std::size_t errors() const { return substitutions + deletions + insertions; }
};

/// Levenshtein alignment with unit costs.  Among minimal alignments the
/// backtrace prefers substitution, then deletion, then insertion.  Throws
/// InvalidArgument when the reference tokenizes to nothing.
WerEntry WordErrorRate(const std::string &reference, const std::string &hypothesis,
                       WerMode mode = WerMode::kToken);

/// sum(errors) / sum(reference_length); 0 for an empty list.
double PooledRate(const std::vector<WerEntry> &entries);

}  // namespace inear::eval

#endif  // INEAR_EVAL_WER_H_
