// src/metrics/spectral_loss.cc

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

#include <cmath>
#include <string>

#include "mcsep/common.h"
#include "mcsep/metrics/loss.h"

namespace mcsep::metrics {

void LossWeights::Validate() const {
  if (!(waveform_weight >= 0.0 && waveform_weight <= 1.0))
    throw ConfigError("waveform_weight must lie in [0, 1]");
}

double WaveformSpectralL1(std::span<const double> estimate,
                          std::span<const double> reference,
                          const dsp::StftConfig &config,
                          const LossWeights &weights) {
  weights.Validate();
  if (estimate.size() != reference.size())
    throw InputError("estimate and reference lengths differ (" +
                     std::to_string(estimate.size()) + " vs " +
                     std::to_string(reference.size()) + ")");
  if (reference.empty()) throw InputError("empty signals");

  double wave = 0.0;
  for (std::size_t n = 0; n < reference.size(); ++n)
    wave += std::abs(estimate[n] - reference[n]);
  wave /= static_cast<double>(reference.size());

  const dsp::Spectrogram est = dsp::Stft(dsp::Waveform::Mono(estimate, 1.0), config);
  const dsp::Spectrogram ref = dsp::Stft(dsp::Waveform::Mono(reference, 1.0), config);
  auto eb = est.ChannelBins(0);
  auto rb = ref.ChannelBins(0);
  double mag = 0.0;
  for (std::size_t i = 0; i < eb.size(); ++i)
    mag += std::abs(std::abs(eb[i]) - std::abs(rb[i]));
  mag /= static_cast<double>(eb.size());

  return weights.waveform_weight * wave + weights.MagnitudeWeight() * mag;
}

}  // namespace mcsep::metrics
