// include/mcsep/dsp/fft.h

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

#ifndef MCSEP_DSP_FFT_H_
#define MCSEP_DSP_FFT_H_

#include <cstddef>
#include <memory>
#include <span>

#include "mcsep/common.h"

namespace mcsep::dsp {

// Real-input FFT of a fixed size with owned, aligned work buffers. An instance
// is not shareable between threads; independent instances are.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  std::size_t Size() const { return size_; }
  std::size_t NumBins() const { return size_ / 2 + 1; }

  // out[k] = sum_n in[n] exp(-2 pi i k n / N), k = 0 .. N/2.
  void Forward(std::span<const double> in, std::span<Complex> out);
  // Inverse of Forward including the 1/N factor. The imaginary parts of the
  // DC and Nyquist bins are ignored.
  void Inverse(std::span<const Complex> in, std::span<double> out);

 private:
  struct Plans;
  std::size_t size_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace mcsep::dsp

#endif  // MCSEP_DSP_FFT_H_
