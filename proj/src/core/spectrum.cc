// core/spectrum.cc

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

#include "inear/core/spectrum.h"

#include "inear/core/fft.h"
#include "inear/error.h"

namespace inear::core {

double PowerSpectrum::BandPower(double lo_hz, double hi_hz) const {
  if (!(hi_hz > lo_hz)) throw InvalidArgument("band: need lo < hi");
  const double nyquist = sample_rate / 2.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < power.size(); ++k) {
    const double f = k * bin_hz;
    const bool top = f >= nyquist && hi_hz >= nyquist;
    if (f >= lo_hz && (f < hi_hz || top)) acc += power[k];
  }
  return acc;
}

double PowerSpectrum::TotalPower() const {
  double acc = 0.0;
  for (double p : power) acc += p;
  return acc;
}

PowerSpectrum WelchSpectrum(const AudioBuffer &buffer, int window_size,
                            int hop) {
  RequireMono(buffer, "spectrum");
  if (!IsPowerOfTwo(window_size) || hop <= 0 || hop > window_size)
    throw InvalidArgument("spectrum: bad window geometry");
  PowerSpectrum ps;
  ps.sample_rate = buffer.sample_rate();
  ps.bin_hz = static_cast<double>(buffer.sample_rate()) / window_size;
  ps.power.assign(window_size / 2 + 1, 0.0);
  const auto x = buffer.samples();
  if (x.empty()) return ps;

  const std::vector<double> w = HannWindow(window_size);
  double wsum = 0.0;
  for (double v : w) wsum += v * v;
  RealFft fft(window_size);
  std::vector<double> seg(window_size);
  std::vector<std::complex<double>> bins(window_size / 2 + 1);
  const std::size_t n = x.size();
  std::size_t frames = 0;
  auto accumulate = [&](std::size_t start) {
    for (int i = 0; i < window_size; ++i)
      seg[i] = start + i < n ? x[start + i] * w[i] : 0.0;
    fft.Forward(seg.data(), bins.data());
    for (int k = 0; k <= window_size / 2; ++k) {
      const double scale = (k == 0 || k == window_size / 2) ? 1.0 : 2.0;
      ps.power[k] += scale * std::norm(bins[k]) / (window_size * wsum);
    }
    ++frames;
  };
  if (n < static_cast<std::size_t>(window_size)) {
    accumulate(0);
    const double fill = static_cast<double>(window_size) / n;
    for (double &p : ps.power) p *= fill;
    return ps;
  }
  for (std::size_t start = 0; start + window_size <= n; start += hop)
    accumulate(start);
  for (double &p : ps.power) p /= frames;
  return ps;
}

}  // namespace inear::core
