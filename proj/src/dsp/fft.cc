// src/dsp/fft.cc

// Copyright 2026  mcsep authors

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

#include "mcsep/dsp/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <string>

namespace mcsep::dsp {

namespace {
// fftw's planner is not thread safe; execution of distinct plans is.
std::mutex &PlannerMutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

struct RealFft::Plans {
  double *real = nullptr;
  fftw_complex *spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

RealFft::RealFft(std::size_t size) : size_(size), plans_(new Plans) {
  if (size < 2) throw ConfigError("FFT size must be >= 2");
  const int n = static_cast<int>(size);
  std::lock_guard<std::mutex> lock(PlannerMutex());
  plans_->real = fftw_alloc_real(size);
  plans_->spectrum = fftw_alloc_complex(size / 2 + 1);
  plans_->forward = fftw_plan_dft_r2c_1d(n, plans_->real, plans_->spectrum,
                                         FFTW_ESTIMATE);
  plans_->inverse = fftw_plan_dft_c2r_1d(n, plans_->spectrum, plans_->real,
                                         FFTW_ESTIMATE);
  if (!plans_->forward || !plans_->inverse)
    throw NumericalError("failed to plan FFT of size " + std::to_string(size));
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->inverse) fftw_destroy_plan(plans_->inverse);
  fftw_free(plans_->real);
  fftw_free(plans_->spectrum);
}

void RealFft::Forward(std::span<const double> in, std::span<Complex> out) {
  std::copy(in.begin(), in.end(), plans_->real);
  std::fill(plans_->real + in.size(), plans_->real + size_, 0.0);
  fftw_execute(plans_->forward);
  std::memcpy(static_cast<void *>(out.data()), plans_->spectrum,
              NumBins() * sizeof(fftw_complex));
}

void RealFft::Inverse(std::span<const Complex> in, std::span<double> out) {
  std::memcpy(plans_->spectrum, in.data(), NumBins() * sizeof(fftw_complex));
  fftw_execute(plans_->inverse);
  const double scale = 1.0 / static_cast<double>(size_);
  const std::size_t count = std::min(out.size(), size_);
  for (std::size_t n = 0; n < count; ++n) out[n] = plans_->real[n] * scale;
}

}  // namespace mcsep::dsp
