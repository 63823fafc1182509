// core/stft.h

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

#ifndef INEAR_CORE_STFT_H_
#define INEAR_CORE_STFT_H_

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "inear/core/audio_buffer.h"
#include "inear/core/band_profile.h"

namespace inear::core {

inline constexpr int kDefaultWindow = 512;
inline constexpr int kDefaultHop = 128;

struct SpectroFrame {
  std::vector<std::complex<double>> bins;  // window_size/2 + 1 values
  long frame_index = 0;
  double bin_hz = 0.0;
};

/// Periodic Hann window of length n.
std::vector<double> HannWindow(int n);

/// Hann-windowed frames starting at sample 0.  Frame count is
/// ceil((len - window_size) / hop) + 1 (one frame for shorter input, none for
/// empty input); the tail is zero-padded.
std::vector<SpectroFrame> Stft(const AudioBuffer &buffer,
                               int window_size = kDefaultWindow,
                               int hop = kDefaultHop);

/// Weighted overlap-add of the frames, normalized by the summed squared
/// window.  The sample rate is recovered from bin_hz.  Output length is
/// (frames - 1) * hop + window_size.
AudioBuffer Istft(const std::vector<SpectroFrame> &frames,
                  int hop = kDefaultHop);

/// Runs `process` on every frame of a padded STFT of `buffer` and returns
/// the resynthesized signal, same length as the input.  The input is padded
/// by window_size - hop on both sides so every sample gets full overlap.
AudioBuffer ProcessSpectrum(
    const AudioBuffer &buffer,
    const std::function<void(SpectroFrame &)> &process,
    int window_size = kDefaultWindow, int hop = kDefaultHop);

/// Padded analysis used by ProcessSpectrum; PaddedIstft inverts it.
std::vector<SpectroFrame> PaddedStft(const AudioBuffer &buffer,
                                     int window_size = kDefaultWindow,
                                     int hop = kDefaultHop);
AudioBuffer PaddedIstft(const std::vector<SpectroFrame> &frames,
                        std::size_t length, int window_size = kDefaultWindow,
                        int hop = kDefaultHop);

/// Zero-phase FIR with 2 * half_length + 1 taps whose response samples the
/// profile (frequency sampling, Hann-windowed).
std::vector<double> DesignProfileFir(const BandGainProfile &profile,
                                     int sample_rate, int half_length = 2048);

/// Linear convolution with `h`, output aligned so that h[centre] is the
/// zero-lag tap; output length equals input length.
std::vector<double> FftConvolve(std::span<const double> x,
                                std::span<const double> h, std::size_t centre);

/// Shapes the buffer's spectrum by the profile (zero-phase FIR).
AudioBuffer ApplyProfile(const AudioBuffer &buffer,
                         const BandGainProfile &profile);

}  // namespace inear::core

#endif  // INEAR_CORE_STFT_H_
