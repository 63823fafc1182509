// events/events.h

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

#ifndef INEAR_EVENTS_EVENTS_H_
#define INEAR_EVENTS_EVENTS_H_

#include <optional>
#include <string>
#include <vector>

#include "inear/core/audio_buffer.h"
#include "inear/json_util.h"

namespace inear::events {

inline constexpr double kMaxSubaudibleHz = 500.0;

/// Band-pass (4th-order Butterworth high-pass at low_hz, low-pass at
/// high_hz), then a centred 20 ms moving RMS.  Output has the input rate and
/// length.  Requires 0 < low_hz < high_hz <= 500.
core::AudioBuffer ExtractSubaudible(const core::AudioBuffer &buffer,
                                    double low_hz = 5.0, double high_hz = 100.0,
                                    double rms_window_s = 0.02);

struct OnsetEvent {
  double time = 0.0;
  double peak_amplitude = 0.0;
};

struct ComparatorConfig {
  enum class Mode { kFixed, kAdaptive };
  Mode mode = Mode::kAdaptive;
  double fixed_threshold = 0.0;
  double k = 2.5;                // adaptive: threshold = k * rolling median
  double median_window = 2.0;    // s
  double median_update = 0.01;   // s between median updates
  double warmup = 0.2;           // adaptive: no onsets before this much history
  double threshold_floor = 0.0;  // absolute lower bound on the threshold
  double refractory = 0.15;      // s
  /// After an onset the threshold is at least ratio * event peak, decaying
  /// with time constant peak_mask_tau.  Ratio 0 disables.
  double peak_mask_ratio = 0.6;
  double peak_mask_tau = 0.3;
  double band_low_hz = 5.0;
  double band_high_hz = 100.0;

  void Validate(int sample_rate = 0) const;
};

/// Per-sample comparator with refractory timer.  An onset fires on an upward
/// crossing of the effective threshold once the refractory period since the
/// previous onset has elapsed.  peak_amplitude is the envelope maximum within
/// the refractory window after the onset.
std::vector<OnsetEvent> DetectOnsets(const core::AudioBuffer &envelope,
                                     const ComparatorConfig &config = {});

struct RhythmPattern {
  std::string name;
  std::vector<double> intervals;  // s
  double tolerance = 0.25;        // fraction of each interval
  double max_total_duration = 0;  // s; 0 means sum(intervals) * (1 + tolerance)

  void Validate(double refractory = 0.0) const;
  double MaxSpan() const;
};

struct RhythmMatch {
  std::string pattern;
  double start = 0.0;
  double end = 0.0;
};

/// Greedy-earliest, non-overlapping matches of |intervals|+1 consecutive
/// onsets.
std::vector<RhythmMatch> MatchRhythm(const std::vector<OnsetEvent> &onsets,
                                     const RhythmPattern &pattern);

struct PulseEstimate {
  std::optional<double> bpm;
  double confidence = 0.0;
};

/// Autocorrelation pulse-rate estimate over the last window_s seconds, lags
/// 0.3 - 1.5 s.  Throws for window_s < 5 or an envelope shorter than it.
PulseEstimate EstimateHeartRate(const core::AudioBuffer &envelope,
                                double window_s = 10.0);

std::string OnsetsCsv(const std::vector<OnsetEvent> &onsets);
std::string MatchesCsv(const std::vector<RhythmMatch> &matches);
std::string PulseCsv(const PulseEstimate &pulse);

ComparatorConfig ComparatorFromJson(const json_util::Json &j,
                                    const std::string &path);
json_util::OrderedJson ComparatorToJson(const ComparatorConfig &c);
RhythmPattern PatternFromJson(const json_util::Json &j, const std::string &path);
json_util::OrderedJson PatternToJson(const RhythmPattern &p);

}  // namespace inear::events

#endif  // INEAR_EVENTS_EVENTS_H_
