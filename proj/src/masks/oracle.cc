// src/masks/oracle.cc

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

#include <algorithm>
#include <cmath>

#include "mcsep/masks/masks.h"

namespace mcsep::masks {

MaskSet OracleMask(std::span<const dsp::Spectrogram> images,
                   const dsp::Spectrogram &mixture, MaskKind kind,
                   const OracleMaskOptions &options) {
  if (images.size() < 2)
    throw InputError("oracle masks need K >= 1 source images plus noise");
  auto same_shape = [&](const dsp::Spectrogram &s) {
    return s.NumChannels() == 1 && s.NumFrames() == mixture.NumFrames() &&
           s.NumFrequencies() == mixture.NumFrequencies() &&
           s.Config() == mixture.Config();
  };
  if (mixture.NumChannels() != 1 || !std::all_of(images.begin(), images.end(), same_shape))
    throw InputError("oracle mask inputs must be single-channel spectrograms "
                     "sharing one shape and STFT config");

  const std::size_t streams = images.size();
  MaskSet out(streams, mixture.NumFrames(), mixture.NumFrequencies(),
              MaskSet::DefaultLabels(streams - 1, true));
  const std::size_t plane = mixture.NumFrames() * mixture.NumFrequencies();
  auto z = mixture.ChannelBins(0);
  std::vector<double> mag(streams);

  for (std::size_t i = 0; i < plane; ++i) {
    for (std::size_t s = 0; s < streams; ++s) mag[s] = std::abs(images[s].ChannelBins(0)[i]);
    switch (kind) {
      case MaskKind::kIbm: {
        std::size_t best = 0;
        for (std::size_t s = 1; s < streams; ++s)
          if (mag[s] > mag[best]) best = s;
        out.Stream(best)[i] = 1.0;
        break;
      }
      case MaskKind::kIrm: {
        double total = 0.0;
        for (double m : mag) total += m;
        for (std::size_t s = 0; s < streams; ++s)
          out.Stream(s)[i] = mag[s] / (total + options.eps);
        break;
      }
      case MaskKind::kPsm: {
        const double denom = std::norm(z[i]) + options.eps;
        for (std::size_t s = 0; s < streams; ++s) {
          const Complex src = images[s].ChannelBins(0)[i];
          const double proj = src.real() * z[i].real() + src.imag() * z[i].imag();
          out.Stream(s)[i] = std::clamp(proj / denom, 0.0, options.psm_ceiling);
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace mcsep::masks
