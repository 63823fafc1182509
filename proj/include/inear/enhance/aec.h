// enhance/aec.h

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

#ifndef INEAR_ENHANCE_AEC_H_
#define INEAR_ENHANCE_AEC_H_

#include <optional>
#include <vector>

#include "inear/core/audio_buffer.h"

namespace inear::enhance {

inline constexpr double kErleCapDb = 80.0;

struct AecConfig {
  int taps = 256;
  double step = 0.5;  // 0 disables adaptation
  double regularization = 1e-6;
  /// Scales the step down while the error holds more than the modelled echo
  /// (near-end activity), using smoothed powers of mic, filter output and
  /// error.  Off gives plain NLMS.
  bool step_control = true;
  /// Power smoothing time constant in units of `taps` samples.
  double smoothing = 4.0;

  void Validate() const;
};

struct AecResult {
  core::AudioBuffer output;
  /// One entry per started second; nullopt where no estimate is possible.
  std::vector<std::optional<double>> erle_trace;
};

/// NLMS echo canceller driven by the known playback.  When `echo_truth` is
/// given the trace is measured against it; otherwise it is estimated from
/// mic vs output on blocks where the playback is active and the modelled
/// echo dominates the mic.
AecResult EchoCancel(const core::AudioBuffer &mic,
                     const core::AudioBuffer &playback,
                     const AecConfig &config = {},
                     const core::AudioBuffer *echo_truth = nullptr);

/// 10 log10(P_echo / P_residual), capped at kErleCapDb.  Throws for silent
/// echo_truth.
double Erle(const core::AudioBuffer &echo_truth,
            const core::AudioBuffer &residual);

}  // namespace inear::enhance

#endif  // INEAR_ENHANCE_AEC_H_
