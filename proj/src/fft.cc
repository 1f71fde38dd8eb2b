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

#include "fadtk/fft.h"

#include <algorithm>
#include <unsupported/Eigen/FFT>

#include "fadtk/error.h"

namespace fadtk {

struct RealFft::Impl {
  Eigen::FFT<double> fft;
};

RealFft::RealFft(size_t size) : size_(size), impl_(std::make_unique<Impl>()) {
  if (size < 2 || size % 2 != 0) {
    throw Error(ErrorCode::kArgument, "FFT length must be even and >= 2");
  }
  impl_->fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::Forward(std::span<const double> input,
                      std::span<Complex> output) {
  impl_->fft.fwd(output.data(), input.data(),
                 static_cast<Eigen::Index>(size_));
}

void RealFft::Inverse(std::span<const Complex> input,
                      std::span<double> output) {
  impl_->fft.inv(output.data(), input.data(),
                 static_cast<Eigen::Index>(size_));
}

size_t NextPowerOfTwo(size_t n) {
  size_t p = 2;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> Convolve(std::span<const double> a,
                             std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const size_t out_len = a.size() + b.size() - 1;
  const size_t n = NextPowerOfTwo(out_len);
  RealFft fft(n);
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  std::vector<Complex> fa(fft.bins()), fb(fft.bins());
  fft.Forward(pa, fa);
  fft.Forward(pb, fb);
  for (size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  fft.Inverse(fa, pa);
  pa.resize(out_len);
  return pa;
}

std::vector<double> CrossCorrelate(std::span<const double> a,
                                   std::span<const double> b, size_t max_lag) {
  std::vector<double> out(max_lag, 0.0);
  if (a.empty() || b.empty() || max_lag == 0) return out;
  // corr[k] = sum_t a[t] b[t-k] = (a conv reverse(b))[k + b.size() - 1]
  std::vector<double> rb(b.rbegin(), b.rend());
  const auto full = Convolve(a, rb);
  for (size_t k = 0; k < max_lag; ++k) {
    const size_t idx = k + b.size() - 1;
    if (idx < full.size()) out[k] = full[idx];
  }
  return out;
}

}  // namespace fadtk
