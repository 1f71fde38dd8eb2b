// Copyright 2026 The FADTK Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FADTK_FFT_H_
#define FADTK_FFT_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fadtk {

using Complex = std::complex<double>;

// Real-input FFT of a fixed length. Not thread-safe; create one per worker.
class RealFft {
 public:
  explicit RealFft(size_t size);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  size_t size() const { return size_; }
  size_t bins() const { return size_ / 2 + 1; }

  // input.size() == size(), output.size() == bins().
  void Forward(std::span<const double> input, std::span<Complex> output);
  // Inverse of Forward, including the 1/size scaling.
  void Inverse(std::span<const Complex> input, std::span<double> output);

 private:
  struct Impl;
  size_t size_;
  std::unique_ptr<Impl> impl_;
};

size_t NextPowerOfTwo(size_t n);

// Full linear convolution, length a.size() + b.size() - 1.
std::vector<double> Convolve(std::span<const double> a,
                             std::span<const double> b);

// result[k] = sum_t a[t] * b[t - k] for k in [0, max_lag), with b taken as
// zero outside its range.
std::vector<double> CrossCorrelate(std::span<const double> a,
                                   std::span<const double> b, size_t max_lag);

}  // namespace fadtk

#endif  // FADTK_FFT_H_
