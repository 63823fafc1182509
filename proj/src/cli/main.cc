// cli/main.cc

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

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "inear/cli/commands.h"

namespace inear::cli {

int ReportError(std::ostream &err) {
  try {
    throw;
  } catch (const ConfigError &e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument &e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError &e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvariantError &e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

int Main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"In-ear whisper testbench"};
  app.name("inear");
  app.require_subcommand(1);

  Overrides o;
  uint64_t seed = 0;
  int parallel = 1;
  std::string out_dir, transcriber, endpoint;
  auto *opt_config = app.add_option("-c,--config", o.config_path, "Run config (JSON)");
  auto *opt_out = app.add_option("-o,--out", out_dir, "Output directory");
  auto *opt_seed = app.add_option("--seed", seed, "Run seed");
  auto *opt_parallel =
      app.add_option("-j,--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  auto *opt_transcriber =
      app.add_option("--transcriber", transcriber, "mock or http")
          ->check(CLI::IsMember({"mock", "http"}));
  auto *opt_endpoint = app.add_option("--endpoint", endpoint, "Transcriber URL");
  (void)opt_config;

  std::string input, playback, manifest;
  auto *simulate = app.add_subcommand("simulate", "Simulate the configured scenarios");
  auto *enhance = app.add_subcommand("enhance", "Gate (and echo-cancel) a stereo capture");
  enhance->add_option("input", input, "Stereo WAV, channel 0 inner")->required();
  auto *opt_playback = enhance->add_option("--playback", playback, "Playback reference WAV");
  auto *events = app.add_subcommand("events", "Detect sub-audible events in a capture");
  events->add_option("input", input, "WAV; channel 0 is used")->required();
  auto *bcfilter = app.add_subcommand("bcfilter", "Bone-conduction simulate a corpus");
  auto *opt_manifest = bcfilter->add_option("manifest", manifest, "JSONL manifest");
  auto *evalc = app.add_subcommand("eval", "SNR and recognition evaluation");
  for (auto *sub : {simulate, enhance, events, bcfilter, evalc}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (opt_out->count()) o.out = out_dir;
  if (opt_seed->count()) o.seed = seed;
  if (opt_parallel->count()) o.parallel = parallel;
  if (opt_transcriber->count()) o.transcriber = transcriber;
  if (opt_endpoint->count()) o.endpoint = endpoint;

  const std::string command = app.get_subcommands().front()->get_name();
  std::vector<std::string> args(argv, argv + argc);
  try {
    const RunConfig config = ResolveConfig(o);
    Warnings warnings;
    if (command == "simulate") {
      warnings = CmdSimulate(config, out);
    } else if (command == "enhance") {
      std::optional<std::string> pb;
      if (opt_playback->count()) pb = playback;
      warnings = CmdEnhance(config, input, pb, out);
    } else if (command == "events") {
      warnings = CmdEvents(config, input, out);
    } else if (command == "bcfilter") {
      std::optional<std::string> m;
      if (opt_manifest->count()) m = manifest;
      warnings = CmdBcfilter(config, m, out);
    } else {
      warnings = CmdEval(config, out);
    }
    WriteRunRecord((std::filesystem::path(config.output_dir) / command).string(), config,
                   command, args);
    for (const auto &w : warnings) err << "warning: " << w << "\n";
    return kExitOk;
  } catch (...) {
    return ReportError(err);
  }
}

}  // namespace inear::cli
