// inear/error.h

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

#ifndef INEAR_ERROR_H_
#define INEAR_ERROR_H_

#include <stdexcept>
#include <string>

namespace inear {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an argument was violated (bad shape, out-of-range value).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Configuration document could not be accepted. `field` names the offending
/// key path (e.g. "scenarios[2].noise_level") when known.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string &what)
      : Error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string &field() const { return field_; }

 private:
  std::string field_;
};

/// File could not be read, written or decoded.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace inear

#endif  // INEAR_ERROR_H_
