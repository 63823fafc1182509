// tests/test_util.h

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

#ifndef INEAR_TESTS_TEST_UTIL_H_
#define INEAR_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "inear/core/audio_buffer.h"

namespace inear::testing {

inline core::AudioBuffer Sine(double hz, double seconds, double amplitude = 1.0,
                              int sr = 16000, double phase = 0.0) {
  const std::size_t n = static_cast<std::size_t>(std::llround(seconds * sr));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = amplitude *
           std::sin(2.0 * std::numbers::pi * hz * i / sr + phase);
  return core::AudioBuffer(std::move(x), sr);
}

inline core::AudioBuffer WhiteNoise(std::size_t n, uint64_t seed,
                                    double sigma = 0.1, int sr = 16000) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sigma);
  std::vector<double> x(n);
  for (double &v : x) v = dist(rng);
  return core::AudioBuffer(std::move(x), sr);
}

/// RMS of samples [from, to).
inline double RmsRange(std::span<const double> x, std::size_t from,
                       std::size_t to) {
  double acc = 0.0;
  for (std::size_t i = from; i < to; ++i) acc += x[i] * x[i];
  return std::sqrt(acc / static_cast<double>(to - from));
}

inline double Db(double ratio) { return 20.0 * std::log10(ratio); }

/// Small hand-rolled generator for property tests.
class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double Normal() { return std::normal_distribution<double>()(rng_); }
  uint64_t Seed() { return rng_(); }
  std::mt19937_64 &engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace inear::testing

#endif  // INEAR_TESTS_TEST_UTIL_H_
