// src/beamform/separate.cc

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

#include "mcsep/beamform/beamform.h"
#include "mcsep/masks/tensor_file.h"

namespace mcsep::beamform {

MvdrSeparation SeparateMvdr(const dsp::Waveform &mixture,
                            const masks::MaskSet &masks,
                            const dsp::StftConfig &config, MicIndex ref_mic,
                            const MvdrOptions &options) {
  ref_mic.CheckWithin(mixture.NumChannels());
  if (masks.NumSpeakers() == 0)
    throw ConfigError("MVDR separation needs at least one speaker mask");
  const dsp::Spectrogram z = dsp::Stft(mixture, config);
  masks.CheckShape(z);
  const masks::MaskSet streams = masks::WithNoiseStream(masks);
  const std::vector<SpatialCovarianceSet> covs = StreamCovariances(z, streams);

  MvdrSeparation out;
  for (std::size_t k = 0; k < streams.NumSpeakers(); ++k) {
    const SpatialCovarianceSet interference = InterferenceCovariance(covs, k);
    BeamformerWeights w = MvdrWeights(covs[k], interference, ref_mic, options);
    out.output.streams.push_back(dsp::Istft(ApplyBeamformer(w, z)));
    out.weights.push_back(std::move(w));
  }
  out.output.Validate();
  return out;
}

void WriteWeights(const std::string &path,
                  std::span<const BeamformerWeights> weights) {
  masks::Tensor t;
  if (weights.empty()) throw InputError("no beamformer weights to write");
  const std::size_t freqs = weights.front().NumFrequencies();
  const std::size_t mics =
      freqs ? static_cast<std::size_t>(weights.front().weights.front().size()) : 0;
  t.dims = {static_cast<std::uint32_t>(weights.size()),
            static_cast<std::uint32_t>(freqs), static_cast<std::uint32_t>(mics), 2};
  for (const BeamformerWeights &w : weights) {
    if (w.NumFrequencies() != freqs)
      throw InputError("beamformer weight sets disagree in shape");
    for (const CVector &v : w.weights) {
      if (static_cast<std::size_t>(v.size()) != mics)
        throw InputError("beamformer weight sets disagree in shape");
      for (Eigen::Index m = 0; m < v.size(); ++m) {
        t.values.push_back(static_cast<float>(v(m).real()));
        t.values.push_back(static_cast<float>(v(m).imag()));
      }
    }
  }
  masks::WriteTensor(path, t);
}

}  // namespace mcsep::beamform
