// src/masks/mask_set.cc

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
#include <string>

#include "mcsep/masks/masks.h"

namespace mcsep::masks {

MaskSet::MaskSet(std::size_t num_streams, std::size_t num_frames,
                 std::size_t num_freqs, std::vector<std::string> labels)
    : MaskSet(num_streams, num_frames, num_freqs, std::move(labels),
              std::vector<double>(num_streams * num_frames * num_freqs, 0.0)) {}

MaskSet::MaskSet(std::size_t num_streams, std::size_t num_frames,
                 std::size_t num_freqs, std::vector<std::string> labels,
                 std::vector<double> values)
    : num_streams_(num_streams),
      num_frames_(num_frames),
      num_freqs_(num_freqs),
      labels_(std::move(labels)),
      values_(std::move(values)) {
  if (labels_.size() != num_streams_)
    throw InputError("mask set needs one label per stream");
  if (values_.size() != num_streams_ * num_frames_ * num_freqs_)
    throw InputError("mask values do not match streams x frames x frequencies");
  for (std::size_t s = 0; s + 1 < labels_.size(); ++s)
    if (labels_[s] == kNoiseLabel)
      throw InputError("the noise stream must be the last mask stream");
}

std::vector<std::string> MaskSet::DefaultLabels(std::size_t num_speakers,
                                                bool with_noise) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < num_speakers; ++k)
    labels.push_back("spk" + std::to_string(k + 1));
  if (with_noise) labels.emplace_back(kNoiseLabel);
  return labels;
}

bool MaskSet::HasNoiseStream() const {
  return !labels_.empty() && labels_.back() == kNoiseLabel;
}

void MaskSet::CheckRange(double ceiling) const {
  for (double v : values_)
    if (!std::isfinite(v) || v < 0.0 || v > ceiling)
      throw InputError("mask value " + std::to_string(v) + " outside [0, " +
                       std::to_string(ceiling) + "]");
}

void MaskSet::CheckShape(const dsp::Spectrogram &spec) const {
  if (num_frames_ != spec.NumFrames() || num_freqs_ != spec.NumFrequencies())
    throw InputError("mask shape " + std::to_string(num_frames_) + "x" +
                     std::to_string(num_freqs_) +
                     " does not match spectrogram " +
                     std::to_string(spec.NumFrames()) + "x" +
                     std::to_string(spec.NumFrequencies()));
}

MaskKind ParseMaskKind(const std::string &name) {
  if (name == "ibm") return MaskKind::kIbm;
  if (name == "irm") return MaskKind::kIrm;
  if (name == "psm") return MaskKind::kPsm;
  throw ConfigError("unknown mask kind '" + name + "'");
}

std::string MaskKindName(MaskKind kind) {
  switch (kind) {
    case MaskKind::kIbm: return "ibm";
    case MaskKind::kIrm: return "irm";
    case MaskKind::kPsm: return "psm";
  }
  return "irm";
}

MaskSet WithNoiseStream(const MaskSet &masks) {
  if (masks.HasNoiseStream()) return masks;
  const std::size_t k = masks.NumStreams();
  std::vector<double> values = masks.Values();
  const std::size_t plane = masks.NumFrames() * masks.NumFrequencies();
  values.resize(values.size() + plane);
  for (std::size_t i = 0; i < plane; ++i) {
    double sum = 0.0;
    for (std::size_t s = 0; s < k; ++s) sum += masks.Stream(s)[i];
    values[k * plane + i] = std::clamp(1.0 - sum, 0.0, 1.0);
  }
  std::vector<std::string> labels = masks.Labels();
  labels.emplace_back(kNoiseLabel);
  return MaskSet(k + 1, masks.NumFrames(), masks.NumFrequencies(),
                 std::move(labels), std::move(values));
}

dsp::Spectrogram ApplyMask(const MaskSet &masks, std::size_t stream,
                           const dsp::Spectrogram &spec, std::size_t channel) {
  if (stream >= masks.NumStreams())
    throw InputError("mask stream index out of range");
  if (channel >= spec.NumChannels())
    throw InputError("spectrogram channel index out of range");
  masks.CheckShape(spec);
  dsp::Spectrogram out(1, spec.Config(), spec.OriginalLength(), spec.SampleRate());
  auto src = spec.ChannelBins(channel);
  auto dst = out.ChannelBins(0);
  auto gain = masks.Stream(stream);
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = Complex(gain[i] * src[i].real(), gain[i] * src[i].imag());
  return out;
}

}  // namespace mcsep::masks
