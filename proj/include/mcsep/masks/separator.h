// include/mcsep/masks/separator.h

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

#ifndef MCSEP_MASKS_SEPARATOR_H_
#define MCSEP_MASKS_SEPARATOR_H_

#include <vector>

#include "mcsep/common.h"
#include "mcsep/dsp/stft.h"
#include "mcsep/masks/masks.h"

namespace mcsep::masks {

// K separated single-channel waveforms.
struct SeparatorOutput {
  std::vector<dsp::Waveform> streams;

  // Throws InputError unless there is at least one stream and all streams are
  // mono with equal length and sample rate.
  void Validate() const;
};

// Spectral-domain separator contract: maps the multichannel mixture STFT to
// one single-channel spectrogram per speaker. Masking and any externally
// trained mapping model plug in here.
class SpectralSeparator {
 public:
  virtual ~SpectralSeparator() = default;
  virtual std::vector<dsp::Spectrogram> Map(const dsp::Spectrogram &mixture) const = 0;
};

// STFT -> separator -> inverse STFT per stream. Every returned spectrogram
// must be single-channel with the mixture's frames, frequencies and config.
SeparatorOutput RunSpectralSeparator(const SpectralSeparator &separator,
                                     const dsp::Waveform &mixture,
                                     const dsp::StftConfig &config);

// Applies each speaker mask to the reference channel. Noise streams are
// skipped.
class MaskingSeparator : public SpectralSeparator {
 public:
  MaskingSeparator(MaskSet masks, MicIndex ref_mic)
      : masks_(std::move(masks)), ref_mic_(ref_mic) {}
  std::vector<dsp::Spectrogram> Map(const dsp::Spectrogram &mixture) const override;

 private:
  MaskSet masks_;
  MicIndex ref_mic_;
};

SeparatorOutput SeparateMasking(const dsp::Waveform &mixture,
                                const MaskSet &masks,
                                const dsp::StftConfig &config, MicIndex ref_mic);

}  // namespace mcsep::masks

#endif  // MCSEP_MASKS_SEPARATOR_H_
