// include/mcsep/masks/masks.h

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

#ifndef MCSEP_MASKS_MASKS_H_
#define MCSEP_MASKS_MASKS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mcsep/common.h"
#include "mcsep/dsp/stft.h"

namespace mcsep::masks {

inline constexpr const char *kNoiseLabel = "noise";

// Real T-F masks, layout streams x frames x frequencies. Speaker streams
// come first; an optional trailing stream labelled "noise".
class MaskSet {
 public:
  MaskSet() = default;
  MaskSet(std::size_t num_streams, std::size_t num_frames,
          std::size_t num_freqs, std::vector<std::string> labels);
  MaskSet(std::size_t num_streams, std::size_t num_frames,
          std::size_t num_freqs, std::vector<std::string> labels,
          std::vector<double> values);

  // Labels "spk1" .. "spkK", plus "noise" when with_noise is set.
  static std::vector<std::string> DefaultLabels(std::size_t num_speakers,
                                                bool with_noise);

  std::size_t NumStreams() const { return num_streams_; }
  std::size_t NumFrames() const { return num_frames_; }
  std::size_t NumFrequencies() const { return num_freqs_; }
  const std::vector<std::string> &Labels() const { return labels_; }
  bool HasNoiseStream() const;
  std::size_t NumSpeakers() const {
    return num_streams_ - (HasNoiseStream() ? 1 : 0);
  }

  double &operator()(std::size_t s, std::size_t t, std::size_t f) {
    return values_[(s * num_frames_ + t) * num_freqs_ + f];
  }
  double operator()(std::size_t s, std::size_t t, std::size_t f) const {
    return values_[(s * num_frames_ + t) * num_freqs_ + f];
  }
  std::span<const double> Stream(std::size_t s) const {
    return {values_.data() + s * num_frames_ * num_freqs_,
            num_frames_ * num_freqs_};
  }
  std::span<double> Stream(std::size_t s) {
    return {values_.data() + s * num_frames_ * num_freqs_,
            num_frames_ * num_freqs_};
  }
  const std::vector<double> &Values() const { return values_; }

  // Throws InputError unless every value is finite and in [0, ceiling].
  void CheckRange(double ceiling = 1.0) const;
  // Throws InputError unless frames x frequencies match `spec`.
  void CheckShape(const dsp::Spectrogram &spec) const;

  friend bool operator==(const MaskSet &, const MaskSet &) = default;

 private:
  std::size_t num_streams_ = 0;
  std::size_t num_frames_ = 0;
  std::size_t num_freqs_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

enum class MaskKind { kIbm, kIrm, kPsm };

MaskKind ParseMaskKind(const std::string &name);
std::string MaskKindName(MaskKind kind);

struct OracleMaskOptions {
  double eps = 1e-12;
  double psm_ceiling = 1.0;
};

// Oracle masks from ground-truth images at the reference mic. `images` holds
// the K source spectrograms followed by the noise spectrogram; all inputs are
// single-channel with identical shapes. The result has K + 1 streams.
//   IBM_j = 1 iff |S_j| is strictly the largest (ties go to the lowest j)
//   IRM_j = |S_j| / (sum_i |S_i| + eps)
//   PSM_j = clip(Re(S_j conj(Z)) / (|Z|^2 + eps), 0, psm_ceiling)
MaskSet OracleMask(std::span<const dsp::Spectrogram> images,
                   const dsp::Spectrogram &mixture, MaskKind kind,
                   const OracleMaskOptions &options = {});

// Appends a noise stream 1 - sum_k mask_k clipped to [0, 1] unless one is
// already present.
MaskSet WithNoiseStream(const MaskSet &masks);

// mask(stream) (.) spec(channel), returned as a single-channel spectrogram.
dsp::Spectrogram ApplyMask(const MaskSet &masks, std::size_t stream,
                           const dsp::Spectrogram &spec, std::size_t channel = 0);

}  // namespace mcsep::masks

#endif  // MCSEP_MASKS_MASKS_H_
