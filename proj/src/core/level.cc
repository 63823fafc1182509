// core/level.cc

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

#include "inear/core/level.h"

#include <cmath>

#include "inear/core/filters.h"
#include "inear/error.h"

namespace inear::core {

double MeanSquareToDb(double mean_square, const CalibrationRef &calib) {
  return calib.full_scale_spl + PowerToDb(mean_square / 0.5);
}

double DbToMeanSquare(double db, const CalibrationRef &calib) {
  return 0.5 * DbToPower(db - calib.full_scale_spl);
}

std::optional<double> AWeightedLevel(const AudioBuffer &buffer,
                                     const CalibrationRef &calib) {
  RequireMono(buffer, "a_weighted_level");
  if (buffer.empty()) return std::nullopt;
  const std::vector<double> y =
      DesignAWeighting(buffer.sample_rate()).Filter(buffer.samples());
  const double ms = MeanSquare(y);
  if (!(ms > 0.0)) return std::nullopt;
  return MeanSquareToDb(ms, calib);
}

CalibrationResult CalibrateToLevel(const AudioBuffer &buffer, double target_dba,
                                   const CalibrationRef &calib) {
  if (!std::isfinite(target_dba))
    throw InvalidArgument("calibrate_to_level: target must be finite");
  const std::optional<double> level = AWeightedLevel(buffer, calib);
  if (!level)
    throw InvalidArgument("calibrate_to_level: input has no measurable level");
  CalibrationResult r;
  r.gain_db = target_dba - *level;
  r.buffer = buffer * DbToAmplitude(r.gain_db);
  for (double v : r.buffer.samples())
    if (std::abs(v) > 1.0) {
      r.clipped = true;
      break;
    }
  return r;
}

}  // namespace inear::core
