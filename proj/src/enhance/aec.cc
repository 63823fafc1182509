// enhance/aec.cc

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

#include "inear/enhance/aec.h"

#include <algorithm>
#include <cmath>

#include "inear/error.h"

namespace inear::enhance {

using core::AudioBuffer;

void AecConfig::Validate() const {
  if (taps < 1) throw ConfigError("aec.taps", "must be >= 1");
  if (!(step >= 0 && step < 2)) throw ConfigError("aec.step", "must be in [0, 2)");
  if (!(regularization > 0)) throw ConfigError("aec.regularization", "must be > 0");
  if (!(smoothing > 0)) throw ConfigError("aec.smoothing", "must be > 0");
}

double Erle(const AudioBuffer &echo_truth, const AudioBuffer &residual) {
  core::RequireSameShape(echo_truth, residual, "erle");
  const double pe = core::MeanSquare(echo_truth.samples());
  if (!(pe > 0)) throw InvalidArgument("erle: echo reference is silent");
  const double pr = core::MeanSquare(residual.samples());
  if (!(pr > 0)) return kErleCapDb;
  return std::min(kErleCapDb, 10.0 * std::log10(pe / pr));
}

AecResult EchoCancel(const AudioBuffer &mic, const AudioBuffer &playback,
                     const AecConfig &config, const AudioBuffer *echo_truth) {
  config.Validate();
  core::RequireMono(mic, "echo_cancel");
  core::RequireSameShape(mic, playback, "echo_cancel");
  if (echo_truth) core::RequireSameShape(mic, *echo_truth, "echo_cancel");

  const auto d = mic.samples();
  const auto x = playback.samples();
  const std::size_t n = d.size();
  const int L = config.taps;
  std::vector<double> w(L, 0.0);
  // Reference history stored twice so each window is contiguous.
  std::vector<double> hist(2 * L, 0.0);
  std::size_t head = 0;
  double xx = 0.0;
  const double lambda = 1.0 - 1.0 / (config.smoothing * L);
  double sd = 0.0, sy = 0.0, se = 0.0;

  std::vector<double> e(n), yhat(n);
  for (std::size_t i = 0; i < n; ++i) {
    head = (head == 0 ? L : head) - 1;
    const double old = hist[head];
    xx += x[i] * x[i] - old * old;
    if (xx < 0) xx = 0;
    hist[head] = hist[head + L] = x[i];
    const double *xv = &hist[head];  // xv[k] = x[i - k]

    double y = 0.0;
    for (int k = 0; k < L; ++k) y += w[k] * xv[k];
    const double err = d[i] - y;
    e[i] = err;
    yhat[i] = y;
    if (config.step == 0.0) continue;

    double mu = config.step;
    if (config.step_control) {
      sd = lambda * sd + (1 - lambda) * d[i] * d[i];
      sy = lambda * sy + (1 - lambda) * y * y;
      se = lambda * se + (1 - lambda) * err * err;
      const double ratio = std::sqrt(std::max(sd - sy, 0.0)) / (std::sqrt(se) + 1e-12);
      mu *= std::clamp(1.0 - ratio, 0.05, 1.0);
    }
    const double g = mu * err / (xx + config.regularization);
    if (g == 0.0) continue;
    for (int k = 0; k < L; ++k) w[k] += g * xv[k];
  }

  AecResult r;
  const int sr = mic.sample_rate();
  for (std::size_t start = 0; start < n; start += sr) {
    const std::size_t end = std::min(n, start + sr);
    double pa = 0, pb = 0, px = 0, py = 0;
    for (std::size_t i = start; i < end; ++i) {
      px += x[i] * x[i];
      py += yhat[i] * yhat[i];
      if (echo_truth) {
        const double echo = echo_truth->samples()[i];
        const double resid = echo - yhat[i];
        pa += echo * echo;
        pb += resid * resid;
      } else {
        pa += d[i] * d[i];
        pb += e[i] * e[i];
      }
    }
    std::optional<double> v;
    const bool usable = echo_truth ? pa > 0 : (px > 0 && pa > 0 && py >= 0.5 * pa);
    if (usable)
      v = pb > 0 ? std::min(kErleCapDb, 10.0 * std::log10(pa / pb)) : kErleCapDb;
    r.erle_trace.push_back(v);
  }
  r.output = AudioBuffer(std::move(e), sr);
  return r;
}

}  // namespace inear::enhance
