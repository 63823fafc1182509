// json_util.h

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

#ifndef INEAR_JSON_UTIL_H_
#define INEAR_JSON_UTIL_H_

#include <cstdint>
#include <initializer_list>
#include <string>

#include "json.hpp"

namespace inear::json_util {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::string Join(const std::string &path, const std::string &key);
std::string Index(const std::string &path, std::size_t i);

/// Throws ConfigError unless `j` is an object whose keys are all allowed.
void RequireObject(const Json &j, const std::string &path);
void RejectUnknownKeys(const Json &j, std::initializer_list<const char *> allowed,
                       const std::string &path);

double GetNumber(const Json &j, const char *key, const std::string &path);
double GetNumberOr(const Json &j, const char *key, double fallback,
                   const std::string &path);
int64_t GetIntOr(const Json &j, const char *key, int64_t fallback,
                 const std::string &path);
uint64_t GetSeedOr(const Json &j, const char *key, uint64_t fallback,
                   const std::string &path);
bool GetBoolOr(const Json &j, const char *key, bool fallback,
               const std::string &path);
std::string GetStringOr(const Json &j, const char *key,
                        const std::string &fallback, const std::string &path);

/// Parses text; syntax errors become ConfigError with the location.
Json Parse(const std::string &text, const std::string &origin);

/// Deterministic two-space-indented dump with a trailing newline.
std::string Dump(const OrderedJson &j);

}  // namespace inear::json_util

#endif  // INEAR_JSON_UTIL_H_
