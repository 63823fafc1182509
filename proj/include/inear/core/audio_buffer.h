// core/audio_buffer.h

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

#ifndef INEAR_CORE_AUDIO_BUFFER_H_
#define INEAR_CORE_AUDIO_BUFFER_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace inear::core {

/// Default rate for every synthetic signal in the project.
inline constexpr int kDefaultSampleRate = 16000;

/// Calibrated PCM samples, one or two channels of equal length.  Sample values
/// are nominally in [-1, 1] (digital full scale) but intermediate results may
/// exceed it; only finiteness is enforced.  Buffers never change rate
/// implicitly: operations combining two buffers require equal rates.
class AudioBuffer {
 public:
  AudioBuffer() = default;
  AudioBuffer(std::vector<double> mono, int sample_rate);
  AudioBuffer(std::vector<std::vector<double>> channels, int sample_rate);

  static AudioBuffer Zeros(std::size_t frames, int sample_rate,
                           int channels = 1);
  /// Interleaves two mono buffers as channel 0 / channel 1.
  static AudioBuffer Stereo(const AudioBuffer &left, const AudioBuffer &right);

  int sample_rate() const { return sample_rate_; }
  int channel_count() const { return static_cast<int>(data_.size()); }
  std::size_t frames() const { return data_.empty() ? 0 : data_[0].size(); }
  bool empty() const { return frames() == 0; }
  double duration() const;

  std::span<const double> channel(int c) const;
  std::span<double> channel(int c);
  /// Samples of a mono buffer; throws for stereo.
  std::span<const double> samples() const;
  std::span<double> samples();

  /// Copy of one channel as a mono buffer.
  AudioBuffer ChannelBuffer(int c) const;
  /// First `frames` samples (or all, if shorter).
  AudioBuffer Head(std::size_t frames) const;

  AudioBuffer &operator+=(const AudioBuffer &other);
  AudioBuffer &operator*=(double gain);

  friend bool operator==(const AudioBuffer &, const AudioBuffer &) = default;

 private:
  std::vector<std::vector<double>> data_;
  int sample_rate_ = kDefaultSampleRate;
};

AudioBuffer operator+(AudioBuffer a, const AudioBuffer &b);
AudioBuffer operator-(AudioBuffer a, const AudioBuffer &b);
AudioBuffer operator*(AudioBuffer a, double gain);

void RequireMono(const AudioBuffer &buffer, std::string_view op);
void RequireSameShape(const AudioBuffer &a, const AudioBuffer &b,
                      std::string_view op);

double MeanSquare(std::span<const double> x);
double Rms(std::span<const double> x);
/// sum(a*b) / sqrt(sum(a*a) * sum(b*b)); 0 if either is silent.
double NormalizedCorrelation(std::span<const double> a,
                             std::span<const double> b);

double PowerToDb(double power);
double AmplitudeToDb(double amplitude);
double DbToAmplitude(double db);
double DbToPower(double db);

}  // namespace inear::core

#endif  // INEAR_CORE_AUDIO_BUFFER_H_
