// core/filters.cc

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

#include "inear/core/filters.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "inear/error.h"

namespace inear::core {

namespace {

using cplx = std::complex<double>;

// Splits roots into conjugate pairs and leftover reals, in a deterministic
// order.  Each pair becomes the polynomial 1 + c1 z^-1 + c2 z^-2.
std::vector<std::pair<double, double>> PairRoots(std::vector<cplx> roots) {
  constexpr double kTol = 1e-9;
  std::vector<cplx> reals, upper;
  for (const cplx &r : roots) {
    if (std::abs(r.imag()) <= kTol * std::max(1.0, std::abs(r)))
      reals.push_back(r.real());
    else if (r.imag() > 0)
      upper.push_back(r);
  }
  std::sort(upper.begin(), upper.end(),
            [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  std::sort(reals.begin(), reals.end(),
            [](cplx a, cplx b) { return a.real() > b.real(); });
  std::vector<std::pair<double, double>> out;
  for (const cplx &r : upper) out.push_back({-2.0 * r.real(), std::norm(r)});
  for (std::size_t i = 0; i < reals.size(); i += 2) {
    if (i + 1 < reals.size()) {
      const double a = reals[i].real(), b = reals[i + 1].real();
      out.push_back({-(a + b), a * b});
    } else {
      out.push_back({-reals[i].real(), 0.0});
    }
  }
  return out;
}

}  // namespace

SosFilter::SosFilter(std::vector<Biquad> sections, double gain,
                     int sample_rate)
    : sections_(std::move(sections)), gain_(gain), sample_rate_(sample_rate) {
  if (sample_rate <= 0)
    throw InvalidArgument("SosFilter: sample rate must be positive");
}

std::complex<double> SosFilter::Response(double hz) const {
  const cplx z1 = std::polar(1.0, -2.0 * std::numbers::pi * hz / sample_rate_);
  const cplx z2 = z1 * z1;
  cplx h = gain_;
  for (const Biquad &s : sections_)
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  return h;
}

double SosFilter::MagnitudeDb(double hz) const {
  return 20.0 * std::log10(std::abs(Response(hz)));
}

std::vector<double> SosFilter::Filter(std::span<const double> x) const {
  std::vector<double> y(x.begin(), x.end());
  for (double &v : y) v *= gain_;
  for (const Biquad &s : sections_) {
    double z1 = 0.0, z2 = 0.0;
    for (double &v : y) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
  return y;
}

AudioBuffer SosFilter::Filter(const AudioBuffer &buffer) const {
  if (buffer.sample_rate() != sample_rate_)
    throw InvalidArgument("SosFilter: sample rate mismatch");
  std::vector<std::vector<double>> chans;
  for (int c = 0; c < buffer.channel_count(); ++c)
    chans.push_back(Filter(buffer.channel(c)));
  if (chans.empty()) return buffer;
  return AudioBuffer(std::move(chans), sample_rate_);
}

SosFilter BilinearToSos(const AnalogZpk &analog, int sample_rate) {
  if (analog.zeros.size() > analog.poles.size())
    throw InvalidArgument("BilinearToSos: improper analog prototype");
  const double fs2 = 2.0 * sample_rate;
  std::vector<cplx> zeros, poles;
  cplx gain = analog.gain;
  for (const cplx &z : analog.zeros) {
    zeros.push_back((fs2 + z) / (fs2 - z));
    gain *= (fs2 - z);
  }
  for (const cplx &p : analog.poles) {
    poles.push_back((fs2 + p) / (fs2 - p));
    gain /= (fs2 - p);
  }
  while (zeros.size() < poles.size()) zeros.push_back(-1.0);

  auto zp = PairRoots(zeros);
  auto pp = PairRoots(poles);
  const std::size_t n = std::max(zp.size(), pp.size());
  std::vector<Biquad> sections(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < zp.size()) {
      sections[i].b1 = zp[i].first;
      sections[i].b2 = zp[i].second;
    }
    if (i < pp.size()) {
      sections[i].a1 = pp[i].first;
      sections[i].a2 = pp[i].second;
    }
  }
  return SosFilter(std::move(sections), gain.real(), sample_rate);
}

SosFilter DesignButterworth(FilterKind kind, double cutoff_hz, int order,
                            int sample_rate) {
  if (order <= 0 || order % 2 != 0)
    throw InvalidArgument("butterworth: order must be a positive even integer");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate / 2.0))
    throw InvalidArgument("butterworth: cutoff must be in (0, sample_rate/2)");
  const double wc =
      2.0 * sample_rate * std::tan(std::numbers::pi * cutoff_hz / sample_rate);
  AnalogZpk zpk;
  for (int k = 0; k < order; ++k) {
    const cplx p = std::polar(
        1.0, std::numbers::pi * (2.0 * k + order + 1) / (2.0 * order));
    if (kind == FilterKind::kLowpass) {
      zpk.poles.push_back(wc * p);
    } else {
      zpk.poles.push_back(wc / p);
      zpk.zeros.push_back(0.0);
    }
  }
  SosFilter f = BilinearToSos(zpk, sample_rate);
  const double ref_hz = kind == FilterKind::kLowpass ? 0.0 : sample_rate / 2.0;
  const double mag = std::abs(f.Response(ref_hz));
  return SosFilter(f.sections(), f.gain() / mag, sample_rate);
}

namespace {

constexpr double kAPole1 = 20.598997;
constexpr double kAPole2 = 107.65265;
constexpr double kAPole3 = 737.86223;
constexpr double kAPole4 = 12194.217;

}  // namespace

SosFilter DesignAWeighting(int sample_rate) {
  const double w = 2.0 * std::numbers::pi;
  AnalogZpk zpk;
  zpk.zeros.assign(4, 0.0);
  zpk.poles = {-w * kAPole1, -w * kAPole1, -w * kAPole2,
               -w * kAPole3, -w * kAPole4, -w * kAPole4};
  SosFilter f = BilinearToSos(zpk, sample_rate);
  const double mag = std::abs(f.Response(1000.0));
  return SosFilter(f.sections(), f.gain() / mag, sample_rate);
}

double AnalogAWeightingDb(double hz) {
  auto raw = [](double f) {
    const double f2 = f * f;
    return kAPole4 * kAPole4 * f2 * f2 /
           ((f2 + kAPole1 * kAPole1) *
            std::sqrt((f2 + kAPole2 * kAPole2) * (f2 + kAPole3 * kAPole3)) *
            (f2 + kAPole4 * kAPole4));
  };
  return 20.0 * std::log10(raw(hz) / raw(1000.0));
}

AudioBuffer ButterworthFilter(const AudioBuffer &buffer, FilterKind kind,
                              double cutoff_hz, int order) {
  return DesignButterworth(kind, cutoff_hz, order, buffer.sample_rate())
      .Filter(buffer);
}

}  // namespace inear::core
