// json_util.cc

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

#include "inear/json_util.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "inear/error.h"

namespace inear::json_util {

std::string Join(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

std::string Index(const std::string &path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void RequireObject(const Json &j, const std::string &path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void RejectUnknownKeys(const Json &j,
                       std::initializer_list<const char *> allowed,
                       const std::string &path) {
  RequireObject(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char *k) { return it.key() == k; });
    if (!known) throw ConfigError(Join(path, it.key()), "unknown key");
  }
}

double GetNumber(const Json &j, const char *key, const std::string &path) {
  if (!j.contains(key)) throw ConfigError(Join(path, key), "missing required key");
  const Json &v = j.at(key);
  if (!v.is_number()) throw ConfigError(Join(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(Join(path, key), "must be finite");
  return d;
}

double GetNumberOr(const Json &j, const char *key, double fallback,
                   const std::string &path) {
  return j.contains(key) ? GetNumber(j, key, path) : fallback;
}

int64_t GetIntOr(const Json &j, const char *key, int64_t fallback,
                 const std::string &path) {
  if (!j.contains(key)) return fallback;
  const Json &v = j.at(key);
  if (!v.is_number_integer())
    throw ConfigError(Join(path, key), "expected an integer");
  return v.get<int64_t>();
}

uint64_t GetSeedOr(const Json &j, const char *key, uint64_t fallback,
                   const std::string &path) {
  if (!j.contains(key)) return fallback;
  const Json &v = j.at(key);
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0)
    return static_cast<uint64_t>(v.get<int64_t>());
  throw ConfigError(Join(path, key), "expected a non-negative integer");
}

bool GetBoolOr(const Json &j, const char *key, bool fallback,
               const std::string &path) {
  if (!j.contains(key)) return fallback;
  const Json &v = j.at(key);
  if (!v.is_boolean()) throw ConfigError(Join(path, key), "expected a boolean");
  return v.get<bool>();
}

std::string GetStringOr(const Json &j, const char *key,
                        const std::string &fallback, const std::string &path) {
  if (!j.contains(key)) return fallback;
  const Json &v = j.at(key);
  if (!v.is_string()) throw ConfigError(Join(path, key), "expected a string");
  return v.get<std::string>();
}

Json Parse(const std::string &text, const std::string &origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ConfigError(origin, std::string("JSON syntax error: ") + e.what());
  }
}

std::string Dump(const OrderedJson &j) { return j.dump(2) + "\n"; }

}  // namespace inear::json_util
