// core/audio_buffer.cc

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

#include "inear/core/audio_buffer.h"

#include <cmath>
#include <limits>
#include <string>

#include "inear/error.h"

namespace inear::core {

namespace {

void CheckFinite(const std::vector<double> &x) {
  for (double v : x)
    if (!std::isfinite(v))
      throw InvalidArgument("AudioBuffer: non-finite sample");
}

}  // namespace

AudioBuffer::AudioBuffer(std::vector<double> mono, int sample_rate)
    : sample_rate_(sample_rate) {
  if (sample_rate <= 0)
    throw InvalidArgument("AudioBuffer: sample rate must be positive");
  CheckFinite(mono);
  data_.push_back(std::move(mono));
}

AudioBuffer::AudioBuffer(std::vector<std::vector<double>> channels,
                         int sample_rate)
    : data_(std::move(channels)), sample_rate_(sample_rate) {
  if (sample_rate <= 0)
    throw InvalidArgument("AudioBuffer: sample rate must be positive");
  if (data_.empty() || data_.size() > 2)
    throw InvalidArgument("AudioBuffer: 1 or 2 channels supported");
  for (const auto &c : data_) {
    if (c.size() != data_[0].size())
      throw InvalidArgument("AudioBuffer: channel lengths differ");
    CheckFinite(c);
  }
}

AudioBuffer AudioBuffer::Zeros(std::size_t frames, int sample_rate,
                               int channels) {
  if (channels < 1 || channels > 2)
    throw InvalidArgument("AudioBuffer: 1 or 2 channels supported");
  return AudioBuffer(std::vector<std::vector<double>>(
                         channels, std::vector<double>(frames, 0.0)),
                     sample_rate);
}

AudioBuffer AudioBuffer::Stereo(const AudioBuffer &left,
                                const AudioBuffer &right) {
  RequireMono(left, "Stereo");
  RequireMono(right, "Stereo");
  RequireSameShape(left, right, "Stereo");
  return AudioBuffer({left.data_[0], right.data_[0]}, left.sample_rate_);
}

double AudioBuffer::duration() const {
  return static_cast<double>(frames()) / sample_rate_;
}

std::span<const double> AudioBuffer::channel(int c) const {
  if (c < 0 || c >= channel_count())
    throw InvalidArgument("AudioBuffer: channel index out of range");
  return data_[c];
}

std::span<double> AudioBuffer::channel(int c) {
  if (c < 0 || c >= channel_count())
    throw InvalidArgument("AudioBuffer: channel index out of range");
  return data_[c];
}

std::span<const double> AudioBuffer::samples() const {
  if (data_.empty()) return {};
  RequireMono(*this, "samples");
  return data_[0];
}

std::span<double> AudioBuffer::samples() {
  if (data_.empty()) return {};
  RequireMono(*this, "samples");
  return data_[0];
}

AudioBuffer AudioBuffer::ChannelBuffer(int c) const {
  auto ch = channel(c);
  return AudioBuffer(std::vector<double>(ch.begin(), ch.end()), sample_rate_);
}

AudioBuffer AudioBuffer::Head(std::size_t n) const {
  AudioBuffer out = *this;
  for (auto &c : out.data_)
    if (c.size() > n) c.resize(n);
  return out;
}

AudioBuffer &AudioBuffer::operator+=(const AudioBuffer &other) {
  RequireSameShape(*this, other, "operator+");
  for (std::size_t c = 0; c < data_.size(); ++c)
    for (std::size_t i = 0; i < data_[c].size(); ++i)
      data_[c][i] += other.data_[c][i];
  return *this;
}

AudioBuffer &AudioBuffer::operator*=(double gain) {
  for (auto &c : data_)
    for (double &v : c) v *= gain;
  return *this;
}

AudioBuffer operator+(AudioBuffer a, const AudioBuffer &b) { return a += b; }

AudioBuffer operator-(AudioBuffer a, const AudioBuffer &b) {
  AudioBuffer neg = b;
  neg *= -1.0;
  return a += neg;
}

AudioBuffer operator*(AudioBuffer a, double gain) { return a *= gain; }

void RequireMono(const AudioBuffer &buffer, std::string_view op) {
  if (buffer.channel_count() != 1)
    throw InvalidArgument(std::string(op) + ": mono buffer required");
}

void RequireSameShape(const AudioBuffer &a, const AudioBuffer &b,
                      std::string_view op) {
  if (a.sample_rate() != b.sample_rate())
    throw InvalidArgument(std::string(op) + ": sample rates differ (" +
                          std::to_string(a.sample_rate()) + " vs " +
                          std::to_string(b.sample_rate()) + ")");
  if (a.channel_count() != b.channel_count())
    throw InvalidArgument(std::string(op) + ": channel counts differ");
  if (a.frames() != b.frames())
    throw InvalidArgument(std::string(op) + ": lengths differ (" +
                          std::to_string(a.frames()) + " vs " +
                          std::to_string(b.frames()) + ")");
}

double MeanSquare(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc / static_cast<double>(x.size());
}

double Rms(std::span<const double> x) { return std::sqrt(MeanSquare(x)); }

double NormalizedCorrelation(std::span<const double> a,
                             std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa <= 0.0 || bb <= 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

double PowerToDb(double power) {
  if (power <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(power);
}

double AmplitudeToDb(double amplitude) {
  return PowerToDb(amplitude * amplitude);
}

double DbToAmplitude(double db) { return std::pow(10.0, db / 20.0); }

double DbToPower(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace inear::core
