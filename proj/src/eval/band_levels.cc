// eval/band_levels.cc

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

#include "inear/eval/band_levels.h"

#include <sstream>

#include "inear/core/spectrum.h"
#include "inear/error.h"

namespace inear::eval {

std::vector<std::optional<double>> BandLevels(const core::AudioBuffer &buffer,
                                              const std::vector<Band> &bands,
                                              const core::CalibrationRef &calib) {
  if (bands.empty()) throw InvalidArgument("band_levels: empty band list");
  core::RequireMono(buffer, "band_levels");
  const double nyquist = buffer.sample_rate() / 2.0;
  for (const Band &b : bands)
    if (!(b.low_hz >= 0 && b.high_hz > b.low_hz && b.low_hz < nyquist))
      throw InvalidArgument("band_levels: band out of range");
  const core::PowerSpectrum ps = core::WelchSpectrum(buffer);
  std::vector<std::optional<double>> out;
  out.reserve(bands.size());
  for (const Band &b : bands) {
    const double p = ps.BandPower(b.low_hz, b.high_hz);
    if (p > 0)
      out.push_back(core::MeanSquareToDb(p, calib));
    else
      out.push_back(std::nullopt);
  }
  return out;
}

std::optional<double> BandLevel(const core::AudioBuffer &buffer, Band band,
                                const core::CalibrationRef &calib) {
  return BandLevels(buffer, {band}, calib)[0];
}

std::vector<Band> ReportBands(int sample_rate) {
  return {{0, 1000}, {1000, 2000}, {2000, 4500}, {4500, sample_rate / 2.0}};
}

json_util::OrderedJson LevelToJson(const std::optional<double> &level) {
  if (!level) return nullptr;
  return *level;
}

std::string LevelToCsv(const std::optional<double> &level) {
  if (!level) return "";
  std::ostringstream os;
  os.precision(10);
  os << *level;
  return os.str();
}

Band BandFromJson(const json_util::Json &j, const std::string &path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(path, "expected [low_hz, high_hz]");
  Band b{j[0].get<double>(), j[1].get<double>()};
  if (!(b.low_hz >= 0 && b.high_hz > b.low_hz))
    throw ConfigError(path, "need 0 <= low_hz < high_hz");
  return b;
}

}  // namespace inear::eval
