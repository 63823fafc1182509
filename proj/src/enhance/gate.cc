// enhance/gate.cc

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

#include "inear/enhance/gate.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "inear/core/fft.h"
#include "inear/error.h"

namespace inear::enhance {

using core::AudioBuffer;

core::BandGainProfile GateConfig::CompensationFor(
    const channel::ChannelProfile &profile, bool anc_on) {
  return profile.ExternalPath(anc_on);
}

void GateConfig::Validate() const {
  if (compensation.empty()) throw ConfigError("gate.compensation", "must not be empty");
  if (!(floor_db < 0)) throw ConfigError("gate.floor", "must be < 0 dB");
  if (!(hysteresis_db >= 0)) throw ConfigError("gate.hysteresis", "must be >= 0");
  if (hold_frames < 0) throw ConfigError("gate.hold", "must be >= 0");
  if (!std::isfinite(dominance_margin))
    throw ConfigError("gate.dominance_margin", "must be finite");
  if (!core::IsPowerOfTwo(window_size) || hop <= 0 || hop > window_size)
    throw ConfigError("gate.window", "bad STFT geometry");
}

GateState::GateState(const GateConfig &config, std::size_t bins, double bin_hz)
    : config_(config), comp_db_(bins), open_(bins, false), age_(bins, 0) {
  for (std::size_t k = 0; k < bins; ++k)
    comp_db_[k] = config.compensation.GainDb(k * bin_hz);
}

std::vector<double> GateState::Step(const core::SpectroFrame &inner,
                                    const core::SpectroFrame &outer) {
  if (inner.bins.size() != comp_db_.size() || outer.bins.size() != comp_db_.size())
    throw InvalidArgument("gate: frame size mismatch");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> gains(comp_db_.size());
  for (std::size_t k = 0; k < comp_db_.size(); ++k) {
    const double mi = std::abs(inner.bins[k]);
    const double mo = std::abs(outer.bins[k]);
    double excess;
    if (mi == 0.0)
      excess = -kInf;
    else if (mo == 0.0)
      excess = kInf;
    else
      excess = 20.0 * std::log10(mi / mo) - comp_db_[k] - config_.dominance_margin;
    if (!open_[k]) {
      if (excess > config_.hysteresis_db) {
        open_[k] = true;
        age_[k] = 1;
      }
    } else {
      ++age_[k];
      if (!(excess > 0.0) && age_[k] > config_.hold_frames) open_[k] = false;
    }
    gains[k] = open_[k] ? 0.0 : config_.floor_db;
  }
  return gains;
}

double GateMask::OpenFraction() const {
  std::size_t open = 0, total = 0;
  for (const auto &f : gain_db)
    for (double g : f) {
      open += g == 0.0;
      ++total;
    }
  return total ? static_cast<double>(open) / total : 0.0;
}

std::string GateMask::ToCsv() const {
  std::ostringstream os;
  os.precision(10);
  os << "frame_index,band_hz,gain_db\n";
  for (std::size_t f = 0; f < gain_db.size(); ++f)
    for (std::size_t k = 0; k < gain_db[f].size(); ++k)
      os << f << ',' << k * bin_hz << ',' << gain_db[f][k] << '\n';
  return os.str();
}

GateResult DoubleNoiseGate(const AudioBuffer &inner, const AudioBuffer &outer,
                           const GateConfig &config) {
  config.Validate();
  core::RequireMono(inner, "double_noise_gate");
  core::RequireSameShape(inner, outer, "double_noise_gate");
  GateResult r;
  r.mask.bin_hz = static_cast<double>(inner.sample_rate()) / config.window_size;
  if (inner.empty()) {
    r.output = inner;
    return r;
  }
  const auto fi = core::PaddedStft(inner, config.window_size, config.hop);
  const auto fo = core::PaddedStft(outer, config.window_size, config.hop);
  GateState state(config, fi[0].bins.size(), r.mask.bin_hz);
  r.mask.gain_db.reserve(fi.size());
  for (std::size_t f = 0; f < fi.size(); ++f) r.mask.gain_db.push_back(state.Step(fi[f], fo[f]));
  r.output = ApplyGateMask(inner, r.mask, config);
  return r;
}

AudioBuffer ApplyGateMask(const AudioBuffer &x, const GateMask &mask,
                          const GateConfig &config) {
  core::RequireMono(x, "apply_gate_mask");
  if (x.empty()) return x;
  auto frames = core::PaddedStft(x, config.window_size, config.hop);
  if (frames.size() != mask.frames() || frames[0].bins.size() != mask.bins())
    throw InvalidArgument("apply_gate_mask: mask shape does not match signal");
  for (std::size_t f = 0; f < frames.size(); ++f)
    for (std::size_t k = 0; k < mask.bins(); ++k)
      if (mask.gain_db[f][k] != 0.0) frames[f].bins[k] *= core::DbToAmplitude(mask.gain_db[f][k]);
  AudioBuffer y = core::PaddedIstft(frames, x.frames(), config.window_size, config.hop);
  return AudioBuffer(std::vector<double>(y.samples().begin(), y.samples().end()),
                     x.sample_rate());
}

}  // namespace inear::enhance
