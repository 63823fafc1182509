// events/events.cc

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

#include "inear/events/events.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "inear/core/filters.h"
#include "inear/error.h"

namespace inear::events {

using core::AudioBuffer;

AudioBuffer ExtractSubaudible(const AudioBuffer &buffer, double low_hz,
                              double high_hz, double rms_window_s) {
  core::RequireMono(buffer, "extract_subaudible");
  if (!(low_hz > 0 && high_hz > low_hz))
    throw InvalidArgument("extract_subaudible: need 0 < low < high");
  if (high_hz > kMaxSubaudibleHz)
    throw InvalidArgument("extract_subaudible: high edge above 500 Hz");
  if (!(rms_window_s > 0)) throw InvalidArgument("extract_subaudible: bad window");
  const int sr = buffer.sample_rate();
  AudioBuffer y = core::ButterworthFilter(buffer, core::FilterKind::kHighpass, low_hz, 4);
  y = core::ButterworthFilter(y, core::FilterKind::kLowpass, high_hz, 4);
  const auto v = y.samples();
  const std::size_t n = v.size();
  std::vector<double> csum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) csum[i + 1] = csum[i] + v[i] * v[i];
  const long w = std::max<long>(1, std::lround(rms_window_s * sr));
  const long half = w / 2;
  std::vector<double> env(n);
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const long lo = std::clamp<long>(i - half, 0, n);
    const long hi = std::clamp<long>(i - half + w, 0, n);
    env[i] = std::sqrt(std::max(0.0, (csum[hi] - csum[lo]) / w));
  }
  return AudioBuffer(std::move(env), sr);
}

void ComparatorConfig::Validate(int sample_rate) const {
  if (!(refractory > 0)) throw ConfigError("comparator.refractory", "must be > 0");
  if (mode == Mode::kAdaptive && !(k > 1)) throw ConfigError("comparator.k", "must be > 1");
  if (mode == Mode::kFixed && !(fixed_threshold >= 0))
    throw ConfigError("comparator.threshold", "must be >= 0");
  if (!(median_window > 0 && median_update > 0))
    throw ConfigError("comparator.median_window", "must be > 0");
  if (!(threshold_floor >= 0)) throw ConfigError("comparator.floor", "must be >= 0");
  if (!(warmup >= 0)) throw ConfigError("comparator.warmup", "must be >= 0");
  if (!(peak_mask_ratio >= 0 && peak_mask_tau > 0))
    throw ConfigError("comparator.peak_mask", "ratio >= 0 and tau > 0 required");
  if (!(band_low_hz > 0 && band_high_hz > band_low_hz && band_high_hz <= kMaxSubaudibleHz))
    throw ConfigError("comparator.band", "need 0 < low < high <= 500 Hz");
  if (sample_rate > 0 && band_high_hz >= sample_rate / 2.0)
    throw ConfigError("comparator.band", "above Nyquist");
}

std::vector<OnsetEvent> DetectOnsets(const AudioBuffer &envelope,
                                     const ComparatorConfig &config) {
  config.Validate();
  core::RequireMono(envelope, "detect_onsets");
  const auto e = envelope.samples();
  const double sr = envelope.sample_rate();
  for (double v : e)
    if (v < 0) throw InvalidArgument("detect_onsets: envelope must be nonnegative");

  const bool adaptive = config.mode == ComparatorConfig::Mode::kAdaptive;
  const long step = std::max<long>(1, std::lround(config.median_update * sr));
  const std::size_t keep =
      std::max<std::size_t>(1, std::lround(config.median_window / config.median_update));
  std::vector<double> history, scratch;
  double threshold = adaptive ? config.threshold_floor
                              : std::max(config.fixed_threshold, config.threshold_floor);

  std::vector<OnsetEvent> out;
  bool above = false, tracking = false;
  long last = 0;
  double peak = 0.0, peak_time = 0.0;
  for (long i = 0; i < static_cast<long>(e.size()); ++i) {
    const double t = i / sr;
    if (adaptive && i % step == 0) {
      history.push_back(e[i]);
      if (history.size() > keep) history.erase(history.begin());
      scratch = history;
      auto mid = scratch.begin() + scratch.size() / 2;
      std::nth_element(scratch.begin(), mid, scratch.end());
      double med = *mid;
      if (scratch.size() % 2 == 0) {
        med = 0.5 * (med + *std::max_element(scratch.begin(), mid));
      }
      threshold = std::max(config.k * med, config.threshold_floor);
    }
    const bool in_refractory = !out.empty() && (i - last) < config.refractory * sr;
    if (tracking) {
      if (in_refractory) {
        if (e[i] > peak) {
          peak = e[i];
          peak_time = t;
        }
      } else {
        out.back().peak_amplitude = peak;
        tracking = false;
      }
    }
    double mask = 0.0;
    if (!out.empty() && config.peak_mask_ratio > 0)
      mask = config.peak_mask_ratio * peak * std::exp(-(t - peak_time) / config.peak_mask_tau);
    const bool now_above = e[i] > std::max(threshold, mask);
    const bool warming = adaptive && t < config.warmup;
    if (now_above && !above && !in_refractory && !warming) {
      out.push_back({t, e[i]});
      last = i;
      peak = e[i];
      peak_time = t;
      tracking = true;
    }
    above = now_above;
  }
  if (tracking) out.back().peak_amplitude = peak;
  return out;
}

double RhythmPattern::MaxSpan() const {
  if (max_total_duration > 0) return max_total_duration;
  double s = 0;
  for (double g : intervals) s += g;
  return s * (1 + tolerance);
}

void RhythmPattern::Validate(double refractory) const {
  if (intervals.empty()) throw ConfigError("pattern.intervals", "must not be empty");
  for (double g : intervals)
    if (!(g > refractory))
      throw ConfigError("pattern.intervals", "every gap must exceed the refractory period");
  if (!(tolerance > 0 && tolerance < 0.5))
    throw ConfigError("pattern.tolerance", "must be in (0, 0.5)");
  if (max_total_duration < 0) throw ConfigError("pattern.max_total_duration", "must be >= 0");
}

std::vector<RhythmMatch> MatchRhythm(const std::vector<OnsetEvent> &onsets,
                                     const RhythmPattern &pattern) {
  if (pattern.intervals.empty()) throw InvalidArgument("match_rhythm: empty pattern");
  pattern.Validate();
  for (std::size_t i = 1; i < onsets.size(); ++i)
    if (onsets[i].time < onsets[i - 1].time)
      throw InvalidArgument("match_rhythm: onsets not time-ordered");
  const std::size_t m = pattern.intervals.size();
  const double span = pattern.MaxSpan();
  std::vector<RhythmMatch> out;
  std::size_t i = 0;
  while (i + m < onsets.size()) {
    bool ok = onsets[i + m].time - onsets[i].time <= span;
    for (std::size_t j = 0; ok && j < m; ++j) {
      const double gap = onsets[i + j + 1].time - onsets[i + j].time;
      const double g = pattern.intervals[j];
      ok = std::abs(gap - g) <= pattern.tolerance * g + 1e-12;
    }
    if (ok) {
      out.push_back({pattern.name, onsets[i].time, onsets[i + m].time});
      i += m + 1;
    } else {
      ++i;
    }
  }
  return out;
}

PulseEstimate EstimateHeartRate(const AudioBuffer &envelope, double window_s) {
  core::RequireMono(envelope, "estimate_heart_rate");
  if (!(window_s >= 5.0)) throw InvalidArgument("estimate_heart_rate: window must be >= 5 s");
  const int sr = envelope.sample_rate();
  const std::size_t need = std::lround(window_s * sr);
  if (envelope.frames() < need)
    throw InvalidArgument("estimate_heart_rate: envelope shorter than window");
  const auto e = envelope.samples().subspan(envelope.frames() - need);

  const int factor = std::max(1, static_cast<int>(std::lround(sr / 250.0)));
  const double rate = static_cast<double>(sr) / factor;
  std::vector<double> x(need / factor);
  for (std::size_t j = 0; j < x.size(); ++j) {
    double acc = 0;
    for (int k = 0; k < factor; ++k) acc += e[j * factor + k];
    x[j] = acc / factor;
  }
  double mean = 0;
  for (double v : x) mean += v;
  mean /= x.size();
  double energy = 0;
  for (double &v : x) {
    v -= mean;
    energy += v * v;
  }
  PulseEstimate r;
  if (!(energy > 0)) return r;

  const long lo = static_cast<long>(std::floor(0.3 * rate));
  const long hi = static_cast<long>(std::ceil(1.5 * rate));
  std::vector<double> ac(hi + 2, 0.0);
  for (long l = lo - 1; l <= hi + 1; ++l) {
    if (l < 0 || l >= static_cast<long>(x.size())) continue;
    double acc = 0;
    for (std::size_t n = 0; n + l < x.size(); ++n) acc += x[n] * x[n + l];
    ac[l] = acc / energy;
  }
  long best = -1;
  for (long l = std::max(lo, 1L); l <= hi; ++l) {
    if (ac[l] > ac[l - 1] && ac[l] >= ac[l + 1] && (best < 0 || ac[l] > ac[best])) best = l;
  }
  if (best < 0 || !(ac[best] > 0)) return r;
  double lag = best;
  const double a = ac[best - 1], b = ac[best], c = ac[best + 1];
  const double den = a - 2 * b + c;
  if (den < 0) lag += 0.5 * (a - c) / den;
  const double bpm = 60.0 * rate / lag;
  if (bpm < 40 || bpm > 200) return r;
  r.bpm = bpm;
  r.confidence = std::min(1.0, b);
  return r;
}

std::string OnsetsCsv(const std::vector<OnsetEvent> &onsets) {
  std::ostringstream os;
  os.precision(10);
  os << "time_s,amplitude\n";
  for (const auto &o : onsets) os << o.time << ',' << o.peak_amplitude << '\n';
  return os.str();
}

std::string MatchesCsv(const std::vector<RhythmMatch> &matches) {
  std::ostringstream os;
  os.precision(10);
  os << "match_start_s,match_end_s,pattern\n";
  for (const auto &m : matches) os << m.start << ',' << m.end << ',' << m.pattern << '\n';
  return os.str();
}

std::string PulseCsv(const PulseEstimate &p) {
  std::ostringstream os;
  os.precision(10);
  os << "bpm,confidence\n";
  if (p.bpm) os << *p.bpm;
  os << ',' << p.confidence << '\n';
  return os.str();
}

ComparatorConfig ComparatorFromJson(const json_util::Json &j, const std::string &path) {
  json_util::RejectUnknownKeys(j,
                               {"mode", "threshold", "k", "median_window", "floor",
                                "refractory", "peak_mask_ratio", "peak_mask_tau", "warmup", "band"},
                               path);
  ComparatorConfig c;
  const std::string mode = json_util::GetStringOr(j, "mode", "adaptive", path);
  if (mode == "fixed")
    c.mode = ComparatorConfig::Mode::kFixed;
  else if (mode != "adaptive")
    throw ConfigError(json_util::Join(path, "mode"), "expected \"fixed\" or \"adaptive\"");
  c.fixed_threshold = json_util::GetNumberOr(j, "threshold", c.fixed_threshold, path);
  if (c.mode == ComparatorConfig::Mode::kFixed && !j.contains("threshold"))
    throw ConfigError(json_util::Join(path, "threshold"), "required in fixed mode");
  c.k = json_util::GetNumberOr(j, "k", c.k, path);
  c.median_window = json_util::GetNumberOr(j, "median_window", c.median_window, path);
  c.threshold_floor = json_util::GetNumberOr(j, "floor", c.threshold_floor, path);
  c.refractory = json_util::GetNumberOr(j, "refractory", c.refractory, path);
  c.peak_mask_ratio = json_util::GetNumberOr(j, "peak_mask_ratio", c.peak_mask_ratio, path);
  c.peak_mask_tau = json_util::GetNumberOr(j, "peak_mask_tau", c.peak_mask_tau, path);
  c.warmup = json_util::GetNumberOr(j, "warmup", c.warmup, path);
  if (j.contains("band")) {
    const auto &b = j.at("band");
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
      throw ConfigError(json_util::Join(path, "band"), "expected [low_hz, high_hz]");
    c.band_low_hz = b[0].get<double>();
    c.band_high_hz = b[1].get<double>();
  }
  try {
    c.Validate();
  } catch (const ConfigError &e) {
    throw ConfigError(path, e.what());
  }
  return c;
}

json_util::OrderedJson ComparatorToJson(const ComparatorConfig &c) {
  json_util::OrderedJson j;
  j["mode"] = c.mode == ComparatorConfig::Mode::kFixed ? "fixed" : "adaptive";
  if (c.mode == ComparatorConfig::Mode::kFixed) j["threshold"] = c.fixed_threshold;
  j["k"] = c.k;
  j["median_window"] = c.median_window;
  j["floor"] = c.threshold_floor;
  j["refractory"] = c.refractory;
  j["peak_mask_ratio"] = c.peak_mask_ratio;
  j["peak_mask_tau"] = c.peak_mask_tau;
  j["warmup"] = c.warmup;
  j["band"] = {c.band_low_hz, c.band_high_hz};
  return j;
}

RhythmPattern PatternFromJson(const json_util::Json &j, const std::string &path) {
  json_util::RejectUnknownKeys(j, {"name", "intervals", "tolerance", "max_total_duration"},
                               path);
  RhythmPattern p;
  p.name = json_util::GetStringOr(j, "name", "", path);
  if (!j.contains("intervals") || !j.at("intervals").is_array())
    throw ConfigError(json_util::Join(path, "intervals"), "expected an array of seconds");
  for (std::size_t i = 0; i < j.at("intervals").size(); ++i) {
    const auto &v = j.at("intervals")[i];
    if (!v.is_number())
      throw ConfigError(json_util::Index(json_util::Join(path, "intervals"), i),
                        "expected a number");
    p.intervals.push_back(v.get<double>());
  }
  p.tolerance = json_util::GetNumberOr(j, "tolerance", p.tolerance, path);
  p.max_total_duration =
      json_util::GetNumberOr(j, "max_total_duration", p.max_total_duration, path);
  try {
    p.Validate();
  } catch (const ConfigError &e) {
    throw ConfigError(path, e.what());
  }
  return p;
}

json_util::OrderedJson PatternToJson(const RhythmPattern &p) {
  json_util::OrderedJson j;
  j["name"] = p.name;
  j["intervals"] = p.intervals;
  j["tolerance"] = p.tolerance;
  j["max_total_duration"] = p.max_total_duration;
  return j;
}

}  // namespace inear::events
