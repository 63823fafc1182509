// eval/snr.cc

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

#include "inear/eval/snr.h"

#include <cmath>
#include <sstream>

#include "inear/error.h"

namespace inear::eval {

namespace {

void RequireComponent(const core::AudioBuffer &b, const char *what) {
  if (b.empty())
    throw InvalidArgument(std::string("snr: missing ground truth (") + what + ")");
}

std::optional<double> Diff(const std::optional<double> &a, const std::optional<double> &b) {
  if (!a || !b) return std::nullopt;
  return *a - *b;
}

}  // namespace

std::optional<double> SnrDb(const core::AudioBuffer &signal,
                            const core::AudioBuffer &noise, Band band,
                            const core::CalibrationRef &calib) {
  RequireComponent(signal, "signal");
  RequireComponent(noise, "noise");
  return Diff(BandLevel(signal, band, calib), BandLevel(noise, band, calib));
}

double SnrImprovement(const channel::MicPair &pair, Band band,
                      const core::CalibrationRef &calib) {
  const auto &t = pair.ground_truth;
  const auto inner = SnrDb(t.clean_whisper_at_inner, t.noise_at_inner, band, calib);
  const auto outer = SnrDb(t.clean_whisper_at_outer, t.noise_at_outer, band, calib);
  if (!inner || !outer)
    throw InvalidArgument("snr_improvement: silent component in band");
  return SnrImprovement(*inner, *outer);
}

double NoiseMargin(const core::AudioBuffer &speech_active,
                   const core::AudioBuffer &noise_only, Band band,
                   const core::CalibrationRef &calib) {
  core::RequireSameShape(speech_active, noise_only, "noise_margin");
  if (!(band.high_hz <= speech_active.sample_rate() / 2.0))
    throw InvalidArgument("noise_margin: band out of range");
  const auto a = BandLevel(speech_active, band, calib);
  const auto b = BandLevel(noise_only, band, calib);
  if (!a || !b) throw InvalidArgument("noise_margin: silent input in band");
  return *a - *b;
}

ConditionLevels MeasureCondition(const std::string &label, const channel::MicPair &pair,
                                 const std::vector<Band> &bands, Band low_band,
                                 const core::CalibrationRef &calib) {
  const auto &t = pair.ground_truth;
  RequireComponent(t.clean_whisper_at_inner, "inner whisper");
  RequireComponent(t.noise_at_inner, "inner noise");
  RequireComponent(t.clean_whisper_at_outer, "outer whisper");
  RequireComponent(t.noise_at_outer, "outer noise");
  ConditionLevels c;
  c.label = label;
  c.inner_whisper_db = BandLevels(t.clean_whisper_at_inner, bands, calib);
  c.inner_noise_db = BandLevels(t.noise_at_inner, bands, calib);
  c.outer_whisper_db = BandLevels(t.clean_whisper_at_outer, bands, calib);
  c.outer_noise_db = BandLevels(t.noise_at_outer, bands, calib);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    c.inner_snr_db.push_back(Diff(c.inner_whisper_db[b], c.inner_noise_db[b]));
    c.outer_snr_db.push_back(Diff(c.outer_whisper_db[b], c.outer_noise_db[b]));
  }
  c.inner_snr_low_db = SnrDb(t.clean_whisper_at_inner, t.noise_at_inner, low_band, calib);
  c.outer_snr_low_db = SnrDb(t.clean_whisper_at_outer, t.noise_at_outer, low_band, calib);
  c.improvement_db = Diff(c.inner_snr_low_db, c.outer_snr_low_db);
  const auto inner_active = t.clean_whisper_at_inner + t.noise_at_inner;
  const auto outer_active = t.clean_whisper_at_outer + t.noise_at_outer;
  c.inner_margin_db = Diff(BandLevel(inner_active, low_band, calib),
                           BandLevel(t.noise_at_inner, low_band, calib));
  c.outer_margin_db = Diff(BandLevel(outer_active, low_band, calib),
                           BandLevel(t.noise_at_outer, low_band, calib));
  return c;
}

std::vector<Band> ThirdOctaveBands(int sample_rate) {
  std::vector<Band> out;
  const double nyquist = sample_rate / 2.0;
  const double step = std::pow(2.0, 1.0 / 6.0);
  for (int i = -13; i < 40; ++i) {
    const double centre = 1000.0 * std::pow(2.0, i / 3.0);
    const double lo = centre / step, hi = centre * step;
    if (lo < 44.0) continue;
    if (lo >= nyquist) break;
    out.push_back({lo, std::min(hi, nyquist)});
  }
  return out;
}

json_util::OrderedJson SnrReport::ToJson() const {
  auto levels = [](const std::vector<std::optional<double>> &v) {
    auto a = json_util::OrderedJson::array();
    for (const auto &x : v) a.push_back(LevelToJson(x));
    return a;
  };
  json_util::OrderedJson j;
  auto jb = json_util::OrderedJson::array();
  for (const Band &b : bands) jb.push_back({b.low_hz, b.high_hz});
  j["bands"] = jb;
  j["low_band"] = {low_band.low_hz, low_band.high_hz};
  auto jc = json_util::OrderedJson::array();
  for (const auto &c : conditions) {
    json_util::OrderedJson e;
    e["label"] = c.label;
    e["inner_whisper_db"] = levels(c.inner_whisper_db);
    e["inner_noise_db"] = levels(c.inner_noise_db);
    e["outer_whisper_db"] = levels(c.outer_whisper_db);
    e["outer_noise_db"] = levels(c.outer_noise_db);
    e["inner_snr_db"] = levels(c.inner_snr_db);
    e["outer_snr_db"] = levels(c.outer_snr_db);
    e["inner_snr_low_db"] = LevelToJson(c.inner_snr_low_db);
    e["outer_snr_low_db"] = LevelToJson(c.outer_snr_low_db);
    e["improvement_db"] = LevelToJson(c.improvement_db);
    e["inner_margin_db"] = LevelToJson(c.inner_margin_db);
    e["outer_margin_db"] = LevelToJson(c.outer_margin_db);
    jc.push_back(e);
  }
  j["conditions"] = jc;
  auto ji = json_util::OrderedJson::array();
  for (const auto &i : comparisons)
    ji.push_back({{"a", i.a}, {"b", i.b}, {"improvement_db", LevelToJson(i.db)}});
  j["comparisons"] = ji;
  return j;
}

std::string SnrReport::SpectraCsv() const {
  std::ostringstream os;
  os.precision(10);
  os << "band_hz_low,band_hz_high,condition,level_db\n";
  for (const auto &c : conditions) {
    const std::pair<const char *, const std::vector<std::optional<double>> *> parts[] = {
        {"inner_whisper", &c.inner_whisper_db},
        {"inner_noise", &c.inner_noise_db},
        {"outer_whisper", &c.outer_whisper_db},
        {"outer_noise", &c.outer_noise_db}};
    for (const auto &[name, v] : parts)
      for (std::size_t b = 0; b < bands.size(); ++b)
        os << bands[b].low_hz << ',' << bands[b].high_hz << ',' << c.label << '/'
           << name << ',' << LevelToCsv((*v)[b]) << '\n';
  }
  return os.str();
}

}  // namespace inear::eval
