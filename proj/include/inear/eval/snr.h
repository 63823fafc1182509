// eval/snr.h

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

#ifndef INEAR_EVAL_SNR_H_
#define INEAR_EVAL_SNR_H_

#include <optional>
#include <string>
#include <vector>

#include "inear/channel/simulator.h"
#include "inear/eval/band_levels.h"

namespace inear::eval {

/// Band SNR from separated components.  Throws InvalidArgument when either
/// component is missing (empty) and returns nullopt when one is silent.
std::optional<double> SnrDb(const core::AudioBuffer &signal,
                            const core::AudioBuffer &noise, Band band,
                            const core::CalibrationRef &calib = {});

inline double SnrImprovement(double snr_a_db, double snr_b_db) {
  return snr_a_db - snr_b_db;
}

/// Inner SNR minus outer SNR from the pair's ground truth.
double SnrImprovement(const channel::MicPair &pair, Band band,
                      const core::CalibrationRef &calib = {});

/// band_level(speech_active) - band_level(noise_only).
double NoiseMargin(const core::AudioBuffer &speech_active,
                   const core::AudioBuffer &noise_only, Band band,
                   const core::CalibrationRef &calib = {});

struct ConditionLevels {
  std::string label;
  // Per report band.
  std::vector<std::optional<double>> inner_whisper_db, inner_noise_db;
  std::vector<std::optional<double>> outer_whisper_db, outer_noise_db;
  std::vector<std::optional<double>> inner_snr_db, outer_snr_db;
  // Sub-1.5 kHz figures.
  std::optional<double> inner_snr_low_db, outer_snr_low_db, improvement_db;
  std::optional<double> inner_margin_db, outer_margin_db;
};

struct Improvement {
  std::string a, b;
  std::optional<double> db;  // snr_low(a.inner) - snr_low(b.inner)
};

struct SnrReport {
  std::vector<Band> bands;
  Band low_band{0, 1500};
  std::vector<ConditionLevels> conditions;
  std::vector<Improvement> comparisons;

  json_util::OrderedJson ToJson() const;
  /// Rows band_hz_low,band_hz_high,condition,level_db for every condition
  /// and component ("<label>/inner_whisper" etc.).
  std::string SpectraCsv() const;
};

ConditionLevels MeasureCondition(const std::string &label, const channel::MicPair &pair,
                                 const std::vector<Band> &bands, Band low_band,
                                 const core::CalibrationRef &calib = {});

/// Third-octave bands from 50 Hz up to Nyquist.
std::vector<Band> ThirdOctaveBands(int sample_rate);

}  // namespace inear::eval

#endif  // INEAR_EVAL_SNR_H_
