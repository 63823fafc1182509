// core/fft.h

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

#ifndef INEAR_CORE_FFT_H_
#define INEAR_CORE_FFT_H_

#include <complex>
#include <vector>

namespace inear::core {

/// Real-input FFT of fixed size n, backed by FFTW.  Forward produces n/2+1
/// bins; Inverse is scaled by 1/n so Inverse(Forward(x)) == x.  An instance
/// is not safe for concurrent use; create one per thread.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  int size() const { return n_; }
  void Forward(const double *in, std::complex<double> *out);
  void Inverse(const std::complex<double> *in, double *out);

 private:
  int n_;
  void *forward_plan_ = nullptr;
  void *inverse_plan_ = nullptr;
  std::vector<double> real_scratch_;
  std::vector<std::complex<double>> complex_scratch_;
};

bool IsPowerOfTwo(long n);

}  // namespace inear::core

#endif  // INEAR_CORE_FFT_H_
