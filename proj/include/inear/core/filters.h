// core/filters.h

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

#ifndef INEAR_CORE_FILTERS_H_
#define INEAR_CORE_FILTERS_H_

#include <complex>
#include <vector>

#include "inear/core/audio_buffer.h"

namespace inear::core {

/// Normalized biquad, a0 == 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

/// Cascade of second-order sections, each run in transposed direct form II.
class SosFilter {
 public:
  SosFilter() = default;
  SosFilter(std::vector<Biquad> sections, double gain, int sample_rate);

  const std::vector<Biquad> &sections() const { return sections_; }
  double gain() const { return gain_; }
  int sample_rate() const { return sample_rate_; }

  std::complex<double> Response(double hz) const;
  double MagnitudeDb(double hz) const;

  /// Causal filtering from zero initial state.
  std::vector<double> Filter(std::span<const double> x) const;
  AudioBuffer Filter(const AudioBuffer &buffer) const;

 private:
  std::vector<Biquad> sections_;
  double gain_ = 1.0;
  int sample_rate_ = kDefaultSampleRate;
};

/// Analog prototype in zero/pole/gain form, s-plane, rad/s.
struct AnalogZpk {
  std::vector<std::complex<double>> zeros;
  std::vector<std::complex<double>> poles;
  double gain = 1.0;
};

/// Bilinear transform to a digital SOS cascade.  Excess poles get zeros at
/// z = -1.
SosFilter BilinearToSos(const AnalogZpk &analog, int sample_rate);

enum class FilterKind { kLowpass, kHighpass };

/// Butterworth design with prewarped cutoff.  Order must be even and
/// 0 < cutoff < sample_rate / 2.
SosFilter DesignButterworth(FilterKind kind, double cutoff_hz, int order,
                            int sample_rate);

/// IEC 61672 A-weighting, normalized to 0 dB at 1 kHz.
SosFilter DesignAWeighting(int sample_rate);

/// Analog A-weighting magnitude in dB (reference curve).
double AnalogAWeightingDb(double hz);

AudioBuffer ButterworthFilter(const AudioBuffer &buffer, FilterKind kind,
                              double cutoff_hz, int order);

}  // namespace inear::core

#endif  // INEAR_CORE_FILTERS_H_
