// core/level.h

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

#ifndef INEAR_CORE_LEVEL_H_
#define INEAR_CORE_LEVEL_H_

#include <optional>

#include "inear/core/audio_buffer.h"

namespace inear::core {

/// dB SPL assigned to a 1 kHz sine of RMS 1/sqrt(2).
struct CalibrationRef {
  double full_scale_spl = 100.0;
};

/// Level in dB of a mean-square value under the calibration.
double MeanSquareToDb(double mean_square, const CalibrationRef &calib);
double DbToMeanSquare(double db, const CalibrationRef &calib);

/// A-weighted RMS level in dB(A).  Returns nullopt ("no level") for empty or
/// digitally silent input.
std::optional<double> AWeightedLevel(const AudioBuffer &buffer,
                                     const CalibrationRef &calib = {});

struct CalibrationResult {
  AudioBuffer buffer;
  double gain_db = 0.0;
  bool clipped = false;  // some |sample| > 1 after scaling
};

/// Scales the buffer so its A-weighted level equals target_dba.  Throws
/// InvalidArgument for input without a level.
CalibrationResult CalibrateToLevel(const AudioBuffer &buffer, double target_dba,
                                   const CalibrationRef &calib = {});

}  // namespace inear::core

#endif  // INEAR_CORE_LEVEL_H_
