// eval/band_levels.h

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

#ifndef INEAR_EVAL_BAND_LEVELS_H_
#define INEAR_EVAL_BAND_LEVELS_H_

#include <optional>
#include <string>
#include <vector>

#include "inear/core/audio_buffer.h"
#include "inear/core/level.h"
#include "inear/json_util.h"

namespace inear::eval {

struct Band {
  double low_hz = 0.0;
  double high_hz = 0.0;
};

/// Unweighted calibrated level per band from Welch-averaged STFT bins.  A
/// band with no energy reports nullopt.
std::vector<std::optional<double>> BandLevels(const core::AudioBuffer &buffer,
                                              const std::vector<Band> &bands,
                                              const core::CalibrationRef &calib = {});

std::optional<double> BandLevel(const core::AudioBuffer &buffer, Band band,
                                const core::CalibrationRef &calib = {});

/// Octave-ish analysis bands used by reports: 0-1000, 1000-2000, 2000-4500,
/// 4500-Nyquist.
std::vector<Band> ReportBands(int sample_rate);

/// null for a missing level.
json_util::OrderedJson LevelToJson(const std::optional<double> &level);
/// Empty for a missing level.
std::string LevelToCsv(const std::optional<double> &level);

Band BandFromJson(const json_util::Json &j, const std::string &path);

}  // namespace inear::eval

#endif  // INEAR_EVAL_BAND_LEVELS_H_
