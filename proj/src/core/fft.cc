// core/fft.cc

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

#include "inear/core/fft.h"

#include <fftw3.h>

#include <mutex>

#include "inear/error.h"

namespace inear::core {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool IsPowerOfTwo(long n) { return n > 0 && (n & (n - 1)) == 0; }

RealFft::RealFft(int n)
    : n_(n), real_scratch_(n > 0 ? n : 0),
      complex_scratch_(n > 0 ? n / 2 + 1 : 0) {
  if (n < 2) throw InvalidArgument("RealFft: size must be >= 2");
  std::lock_guard<std::mutex> lock(PlannerMutex());
  auto *c = reinterpret_cast<fftw_complex *>(complex_scratch_.data());
  forward_plan_ = fftw_plan_dft_r2c_1d(n, real_scratch_.data(), c,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_dft_c2r_1d(n, c, real_scratch_.data(),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr)
    throw Error("RealFft: FFTW planning failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealFft::Forward(const double *in, std::complex<double> *out) {
  std::copy(in, in + n_, real_scratch_.begin());
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_),
                       real_scratch_.data(),
                       reinterpret_cast<fftw_complex *>(out));
}

void RealFft::Inverse(const std::complex<double> *in, double *out) {
  // c2r destroys its input.
  std::copy(in, in + n_ / 2 + 1, complex_scratch_.begin());
  fftw_execute_dft_c2r(
      static_cast<fftw_plan>(inverse_plan_),
      reinterpret_cast<fftw_complex *>(complex_scratch_.data()), out);
  const double scale = 1.0 / n_;
  for (int i = 0; i < n_; ++i) out[i] *= scale;
}

}  // namespace inear::core
