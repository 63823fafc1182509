// core/band_profile.cc

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

#include "inear/core/band_profile.h"

#include <algorithm>
#include <cmath>

#include "inear/core/audio_buffer.h"
#include "inear/error.h"

namespace inear::core {

BandGainProfile::BandGainProfile(std::vector<GainPoint> points)
    : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const GainPoint &p = points_[i];
    if (!std::isfinite(p.hz) || p.hz < 0.0)
      throw InvalidArgument("BandGainProfile: frequency must be >= 0");
    if (!std::isfinite(p.db))
      throw InvalidArgument("BandGainProfile: gain must be finite");
    if (i > 0 && !(p.hz > points_[i - 1].hz))
      throw InvalidArgument(
          "BandGainProfile: frequencies must be strictly increasing");
  }
}

BandGainProfile BandGainProfile::Flat(double db) {
  return BandGainProfile({{1000.0, db}});
}

double BandGainProfile::GainDb(double hz) const {
  if (points_.empty())
    throw InvalidArgument("BandGainProfile: empty profile");
  if (hz <= points_.front().hz) return points_.front().db;
  if (hz >= points_.back().hz) return points_.back().db;
  auto it = std::upper_bound(
      points_.begin(), points_.end(), hz,
      [](double f, const GainPoint &p) { return f < p.hz; });
  const GainPoint &b = *it;
  const GainPoint &a = *(it - 1);
  double t;
  if (a.hz <= 0.0)
    t = hz / b.hz;
  else
    t = std::log(hz / a.hz) / std::log(b.hz / a.hz);
  return a.db + t * (b.db - a.db);
}

double BandGainProfile::GainLinear(double hz) const {
  return DbToAmplitude(GainDb(hz));
}

BandGainProfile BandGainProfile::operator+(const BandGainProfile &other) const {
  if (empty() || other.empty())
    throw InvalidArgument("BandGainProfile: cannot combine empty profile");
  std::vector<double> freqs;
  for (const auto &p : points_) freqs.push_back(p.hz);
  for (const auto &p : other.points_) freqs.push_back(p.hz);
  std::sort(freqs.begin(), freqs.end());
  freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());
  std::vector<GainPoint> out;
  out.reserve(freqs.size());
  for (double f : freqs) out.push_back({f, GainDb(f) + other.GainDb(f)});
  return BandGainProfile(std::move(out));
}

BandGainProfile BandGainProfile::Shifted(double db) const {
  std::vector<GainPoint> out = points_;
  for (auto &p : out) p.db += db;
  return BandGainProfile(std::move(out));
}

}  // namespace inear::core
