// include/mcsep/metrics/loss.h

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

#ifndef MCSEP_METRICS_LOSS_H_
#define MCSEP_METRICS_LOSS_H_

#include <span>

#include "mcsep/dsp/stft.h"

namespace mcsep::metrics {

struct LossWeights {
  double waveform_weight = 0.99;

  double MagnitudeWeight() const { return 1.0 - waveform_weight; }
  void Validate() const;
};

// waveform_weight * mean|e - s| + magnitude_weight * mean||STFT e| - |STFT s||,
// the second mean taken over all frames x frequencies.
double WaveformSpectralL1(std::span<const double> estimate,
                          std::span<const double> reference,
                          const dsp::StftConfig &config,
                          const LossWeights &weights = {});

}  // namespace mcsep::metrics

#endif  // MCSEP_METRICS_LOSS_H_
