// src/masks/separate.cc

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

#include <limits>
#include <string>

#include "mcsep/masks/separator.h"

namespace mcsep::masks {

void SeparatorOutput::Validate() const {
  if (streams.empty()) throw InputError("separator produced no streams");
  for (const auto &s : streams) {
    if (s.NumChannels() != 1)
      throw InputError("separated streams must be single-channel");
    if (s.Length() != streams.front().Length() ||
        s.SampleRate() != streams.front().SampleRate())
      throw InputError("separated streams differ in length or sample rate");
  }
}

SeparatorOutput RunSpectralSeparator(const SpectralSeparator &separator,
                                     const dsp::Waveform &mixture,
                                     const dsp::StftConfig &config) {
  const dsp::Spectrogram z = dsp::Stft(mixture, config);
  const std::vector<dsp::Spectrogram> mapped = separator.Map(z);
  if (mapped.empty()) throw InputError("separator produced no streams");
  SeparatorOutput out;
  for (std::size_t k = 0; k < mapped.size(); ++k) {
    const dsp::Spectrogram &s = mapped[k];
    if (s.NumChannels() != 1 || s.NumFrames() != z.NumFrames() ||
        s.NumFrequencies() != z.NumFrequencies() || !(s.Config() == z.Config()) ||
        s.OriginalLength() != z.OriginalLength())
      throw InputError("separator stream " + std::to_string(k + 1) +
                       " does not match the mixture STFT layout");
    out.streams.push_back(dsp::Istft(s));
  }
  out.Validate();
  return out;
}

std::vector<dsp::Spectrogram> MaskingSeparator::Map(
    const dsp::Spectrogram &mixture) const {
  ref_mic_.CheckWithin(mixture.NumChannels());
  masks_.CheckShape(mixture);
  std::vector<dsp::Spectrogram> out;
  for (std::size_t k = 0; k < masks_.NumSpeakers(); ++k)
    out.push_back(ApplyMask(masks_, k, mixture, ref_mic_.zero_based()));
  return out;
}

SeparatorOutput SeparateMasking(const dsp::Waveform &mixture,
                                const MaskSet &masks,
                                const dsp::StftConfig &config, MicIndex ref_mic) {
  ref_mic.CheckWithin(mixture.NumChannels());
  masks.CheckRange(std::numeric_limits<double>::max());
  return RunSpectralSeparator(MaskingSeparator(masks, ref_mic), mixture, config);
}

}  // namespace mcsep::masks
