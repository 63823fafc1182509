// core/spectrum.h

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

#ifndef INEAR_CORE_SPECTRUM_H_
#define INEAR_CORE_SPECTRUM_H_

#include <span>
#include <vector>

#include "inear/core/stft.h"

namespace inear::core {

/// Averaged one-sided power spectrum (Welch, Hann window).  Bin powers sum to
/// the window-weighted mean square of the signal.  Only full frames are used;
/// input shorter than one window is analysed as a single zero-padded frame.
struct PowerSpectrum {
  std::vector<double> power;
  double bin_hz = 0.0;
  int sample_rate = 0;

  /// Sum of bins whose centre lies in [lo_hz, hi_hz); the Nyquist bin is
  /// included when hi_hz >= sample_rate / 2.
  double BandPower(double lo_hz, double hi_hz) const;
  double TotalPower() const;
};

PowerSpectrum WelchSpectrum(const AudioBuffer &buffer,
                            int window_size = kDefaultWindow,
                            int hop = kDefaultHop);

}  // namespace inear::core

#endif  // INEAR_CORE_SPECTRUM_H_
