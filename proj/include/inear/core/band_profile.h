// core/band_profile.h

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

#ifndef INEAR_CORE_BAND_PROFILE_H_
#define INEAR_CORE_BAND_PROFILE_H_

#include <vector>

namespace inear::core {

struct GainPoint {
  double hz = 0.0;
  double db = 0.0;
  friend bool operator==(const GainPoint &, const GainPoint &) = default;
};

/// Piecewise frequency -> gain (dB) curve.  Between breakpoints the gain is
/// linear in (log f, dB); a segment that starts at 0 Hz is linear in f.
/// Outside the breakpoint range the nearest end value is held.
class BandGainProfile {
 public:
  BandGainProfile() = default;
  /// Throws InvalidArgument unless frequencies are >= 0 and strictly
  /// increasing and all gains are finite.
  explicit BandGainProfile(std::vector<GainPoint> points);

  static BandGainProfile Flat(double db);

  bool empty() const { return points_.empty(); }
  const std::vector<GainPoint> &points() const { return points_; }

  double GainDb(double hz) const;
  double GainLinear(double hz) const;

  /// Pointwise sum in dB, exact at the union of both breakpoint sets.
  BandGainProfile operator+(const BandGainProfile &other) const;
  BandGainProfile Shifted(double db) const;

  friend bool operator==(const BandGainProfile &,
                         const BandGainProfile &) = default;

 private:
  std::vector<GainPoint> points_;
};

}  // namespace inear::core

#endif  // INEAR_CORE_BAND_PROFILE_H_
