// cli/commands.h

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

#ifndef INEAR_CLI_COMMANDS_H_
#define INEAR_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "inear/cli/run_config.h"

namespace inear::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitInvariant = 4,
};

/// Command-line overrides; set fields win over the config file.
struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<uint64_t> seed;
  std::optional<int> parallel;
  std::optional<std::string> transcriber;
  std::optional<std::string> endpoint;
};

RunConfig ResolveConfig(const Overrides &o);

/// Writes resolved_config.json and run_metadata.json into dir.  Only the
/// metadata file carries timestamps.
void WriteRunRecord(const std::string &dir, const RunConfig &config,
                    const std::string &command, const std::vector<std::string> &argv);

using Warnings = std::vector<std::string>;

/// Each command writes into <output_dir>/<command>/ and returns warnings.
/// Errors are thrown as ConfigError, IoError, InvalidArgument or
/// InvariantError.
Warnings CmdSimulate(const RunConfig &config, std::ostream &out);
Warnings CmdEnhance(const RunConfig &config, const std::string &input,
                    const std::optional<std::string> &playback, std::ostream &out);
Warnings CmdEvents(const RunConfig &config, const std::string &input, std::ostream &out);
Warnings CmdBcfilter(const RunConfig &config, const std::optional<std::string> &manifest,
                     std::ostream &out);
Warnings CmdEval(const RunConfig &config, std::ostream &out);

/// Maps an in-flight exception to an exit code and prints it to err.
int ReportError(std::ostream &err);

/// Full command line: inear <command> [options].
int Main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace inear::cli

#endif  // INEAR_CLI_COMMANDS_H_
