// core/stft.cc

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

#include "inear/core/stft.h"

#include <cmath>
#include <numbers>

#include "inear/core/fft.h"
#include "inear/error.h"

namespace inear::core {

namespace {

void CheckGeometry(int window_size, int hop) {
  if (!IsPowerOfTwo(window_size) || window_size < 2)
    throw InvalidArgument("stft: window size must be a power of two");
  if (hop <= 0 || hop > window_size)
    throw InvalidArgument("stft: hop must be in (0, window_size]");
}

}  // namespace

std::vector<double> HannWindow(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  return w;
}

std::vector<SpectroFrame> Stft(const AudioBuffer &buffer, int window_size,
                               int hop) {
  CheckGeometry(window_size, hop);
  RequireMono(buffer, "stft");
  const auto x = buffer.samples();
  const long len = static_cast<long>(x.size());
  std::vector<SpectroFrame> frames;
  if (len == 0) return frames;
  long count = 1;
  if (len > window_size) count = (len - window_size + hop - 1) / hop + 1;

  const std::vector<double> w = HannWindow(window_size);
  const double bin_hz = static_cast<double>(buffer.sample_rate()) / window_size;
  RealFft fft(window_size);
  std::vector<double> seg(window_size);
  frames.reserve(count);
  for (long f = 0; f < count; ++f) {
    const long start = f * hop;
    for (int i = 0; i < window_size; ++i) {
      const long j = start + i;
      seg[i] = j < len ? x[j] * w[i] : 0.0;
    }
    SpectroFrame frame;
    frame.bins.resize(window_size / 2 + 1);
    frame.frame_index = f;
    frame.bin_hz = bin_hz;
    fft.Forward(seg.data(), frame.bins.data());
    frames.push_back(std::move(frame));
  }
  return frames;
}

AudioBuffer Istft(const std::vector<SpectroFrame> &frames, int hop) {
  if (frames.empty()) return AudioBuffer(std::vector<double>{}, kDefaultSampleRate);
  const std::size_t nbins = frames.front().bins.size();
  if (nbins < 2) throw InvalidArgument("istft: frame has too few bins");
  const int window_size = static_cast<int>(2 * (nbins - 1));
  CheckGeometry(window_size, hop);
  const double bin_hz = frames.front().bin_hz;
  for (const auto &f : frames)
    if (f.bins.size() != nbins || f.bin_hz != bin_hz)
      throw InvalidArgument("istft: inconsistent frame shapes");
  const int sample_rate = static_cast<int>(std::lround(bin_hz * window_size));

  const std::vector<double> w = HannWindow(window_size);
  const std::size_t len = (frames.size() - 1) * hop + window_size;
  std::vector<double> out(len, 0.0), norm(len, 0.0), seg(window_size);
  RealFft fft(window_size);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    fft.Inverse(frames[f].bins.data(), seg.data());
    const std::size_t start = f * hop;
    for (int i = 0; i < window_size; ++i) {
      out[start + i] += seg[i] * w[i];
      norm[start + i] += w[i] * w[i];
    }
  }
  for (std::size_t i = 0; i < len; ++i)
    out[i] = norm[i] > 1e-12 ? out[i] / norm[i] : 0.0;
  return AudioBuffer(std::move(out), sample_rate);
}

std::vector<SpectroFrame> PaddedStft(const AudioBuffer &buffer,
                                     int window_size, int hop) {
  CheckGeometry(window_size, hop);
  RequireMono(buffer, "stft");
  const std::size_t pad = window_size - hop;
  const auto x = buffer.samples();
  std::vector<double> padded(x.size() + 2 * pad, 0.0);
  std::copy(x.begin(), x.end(), padded.begin() + pad);
  return Stft(AudioBuffer(std::move(padded), buffer.sample_rate()), window_size,
              hop);
}

AudioBuffer PaddedIstft(const std::vector<SpectroFrame> &frames,
                        std::size_t length, int window_size, int hop) {
  if (frames.empty()) return AudioBuffer(std::vector<double>{}, kDefaultSampleRate);
  AudioBuffer full = Istft(frames, hop);
  const std::size_t pad = window_size - hop;
  const auto y = full.samples();
  std::vector<double> out(length, 0.0);
  for (std::size_t i = 0; i < length && pad + i < y.size(); ++i)
    out[i] = y[pad + i];
  return AudioBuffer(std::move(out), full.sample_rate());
}

AudioBuffer ProcessSpectrum(const AudioBuffer &buffer,
                            const std::function<void(SpectroFrame &)> &process,
                            int window_size, int hop) {
  RequireMono(buffer, "ProcessSpectrum");
  if (buffer.empty()) return buffer;
  std::vector<SpectroFrame> frames = PaddedStft(buffer, window_size, hop);
  for (auto &f : frames) process(f);
  AudioBuffer out = PaddedIstft(frames, buffer.frames(), window_size, hop);
  return AudioBuffer(std::vector<double>(out.samples().begin(),
                                         out.samples().end()),
                     buffer.sample_rate());
}

std::vector<double> DesignProfileFir(const BandGainProfile &profile,
                                     int sample_rate, int half_length) {
  if (profile.empty()) throw InvalidArgument("apply_profile: empty profile");
  if (half_length < 1) throw InvalidArgument("profile fir: bad length");
  int n = 2;
  while (n < 4 * half_length) n *= 2;
  std::vector<std::complex<double>> spec(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k)
    spec[k] = profile.GainLinear(static_cast<double>(k) * sample_rate / n);
  std::vector<double> impulse(n);
  RealFft fft(n);
  fft.Inverse(spec.data(), impulse.data());
  std::vector<double> h(2 * half_length + 1);
  for (int i = -half_length; i <= half_length; ++i) {
    const double w =
        0.5 + 0.5 * std::cos(std::numbers::pi * i / (half_length + 1));
    h[i + half_length] = w * impulse[(i + n) % n];
  }
  return h;
}

std::vector<double> FftConvolve(std::span<const double> x,
                                std::span<const double> h,
                                std::size_t centre) {
  std::vector<double> y(x.size(), 0.0);
  if (x.empty() || h.empty()) return y;
  const std::size_t m = h.size();
  std::size_t n = 2;
  while (n < 2 * m) n *= 2;
  const std::size_t block = n - m + 1;
  RealFft fft(static_cast<int>(n));
  std::vector<double> buf(n);
  std::vector<std::complex<double>> hf(n / 2 + 1), xf(n / 2 + 1);
  std::fill(buf.begin(), buf.end(), 0.0);
  std::copy(h.begin(), h.end(), buf.begin());
  fft.Forward(buf.data(), hf.data());
  // Full convolution index j maps to output index j - centre.
  for (std::size_t start = 0; start < x.size(); start += block) {
    const std::size_t len = std::min(block, x.size() - start);
    std::fill(buf.begin(), buf.end(), 0.0);
    std::copy(x.begin() + start, x.begin() + start + len, buf.begin());
    fft.Forward(buf.data(), xf.data());
    for (std::size_t k = 0; k < xf.size(); ++k) xf[k] *= hf[k];
    fft.Inverse(xf.data(), buf.data());
    for (std::size_t i = 0; i < len + m - 1; ++i) {
      const long out = static_cast<long>(start + i) - static_cast<long>(centre);
      if (out >= 0 && out < static_cast<long>(y.size())) y[out] += buf[i];
    }
  }
  return y;
}

AudioBuffer ApplyProfile(const AudioBuffer &buffer,
                         const BandGainProfile &profile) {
  if (profile.empty()) throw InvalidArgument("apply_profile: empty profile");
  RequireMono(buffer, "apply_profile");
  constexpr int kHalf = 2048;
  const std::vector<double> h =
      DesignProfileFir(profile, buffer.sample_rate(), kHalf);
  return AudioBuffer(FftConvolve(buffer.samples(), h, kHalf),
                     buffer.sample_rate());
}

}  // namespace inear::core
