// eval/wer.cc

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

#include "inear/eval/wer.h"

#include <algorithm>
#include <cstdint>

#include "inear/error.h"

namespace inear::eval {

namespace {

// Decodes one scalar starting at s[i]; advances i.
char32_t DecodeUtf8(const std::string &s, std::size_t &i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  int len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    len = 1;
    cp = b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    throw InvalidArgument("tokenize: malformed UTF-8");
  }
  if (i + len > s.size()) throw InvalidArgument("tokenize: truncated UTF-8");
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) throw InvalidArgument("tokenize: malformed UTF-8");
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
    throw InvalidArgument("tokenize: malformed UTF-8");
  i += len;
  return cp;
}

bool IsSpace(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

}  // namespace

WerMode ParseWerMode(const std::string &name) {
  if (name == "token") return WerMode::kToken;
  if (name == "character") return WerMode::kCharacter;
  throw InvalidArgument("unknown WER mode \"" + name + "\" (token|character)");
}

std::string WerModeName(WerMode mode) {
  return mode == WerMode::kToken ? "token" : "character";
}

WerMode DefaultWerMode(const std::string &language_tag) {
  std::string primary = language_tag.substr(0, language_tag.find_first_of("-_"));
  std::transform(primary.begin(), primary.end(), primary.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return primary == "ja" || primary == "zh" ? WerMode::kCharacter : WerMode::kToken;
}

std::vector<std::string> Tokenize(const std::string &text, WerMode mode) {
  std::vector<std::string> out;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t cp = DecodeUtf8(text, i);
    const std::string unit = text.substr(start, i - start);
    if (IsSpace(cp)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (mode == WerMode::kCharacter)
      out.push_back(unit);
    else
      current += unit;
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

WerEntry WordErrorRate(const std::string &reference, const std::string &hypothesis,
                       WerMode mode) {
  const auto ref = Tokenize(reference, mode);
  const auto hyp = Tokenize(hypothesis, mode);
  if (ref.empty()) throw InvalidArgument("word_error_rate: empty reference");
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1),
                          d[i - 1][j] + 1, d[i][j - 1] + 1});

  WerEntry e;
  e.reference = reference;
  e.hypothesis = hypothesis;
  e.reference_length = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (d[i][j] == d[i - 1][j - 1] + (same ? 0 : 1)) {
        e.substitutions += !same;
        --i, --j;
        continue;
      }
    }
    if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++e.deletions;
      --i;
    } else {
      ++e.insertions;
      --j;
    }
  }
  e.rate = static_cast<double>(e.errors()) / static_cast<double>(n);
  return e;
}

double PooledRate(const std::vector<WerEntry> &entries) {
  std::size_t errors = 0, length = 0;
  for (const auto &e : entries) {
    errors += e.errors();
    length += e.reference_length;
  }
  return length == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(length);
}

}  // namespace inear::eval
