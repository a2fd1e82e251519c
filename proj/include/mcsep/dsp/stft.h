// include/mcsep/dsp/stft.h

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

#ifndef MCSEP_DSP_STFT_H_
#define MCSEP_DSP_STFT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mcsep/common.h"
#include "mcsep/dsp/waveform.h"

namespace mcsep::dsp {

enum class WindowKind { kHann };

WindowKind ParseWindowKind(const std::string &name);
std::string WindowKindName(WindowKind kind);

// Periodic analysis window, w[n] = 0.5 (1 - cos(2 pi n / length)) for Hann.
std::vector<double> MakeWindow(WindowKind kind, std::size_t length);

struct StftConfig {
  std::size_t window_length = 512;
  std::size_t hop = 128;
  WindowKind window_kind = WindowKind::kHann;
  std::size_t fft_size = 512;
  // Pads window_length / 2 zeros on both sides before framing.
  bool center_padding = true;

  static StftConfig Hann(std::size_t window_length, std::size_t hop) {
    return StftConfig{window_length, hop, WindowKind::kHann, window_length,
                      true};
  }

  // Throws ConfigError unless 2 <= window_length <= fft_size, fft_size is a
  // power of two, 1 <= hop <= window_length and the squared-window overlap
  // envelope never vanishes in steady state.
  void Validate() const;

  std::size_t NumFrequencies() const { return fft_size / 2 + 1; }
  std::size_t PadLength() const {
    return center_padding ? window_length / 2 : 0;
  }
  // Number of frames needed to cover `length` samples. Throws InputError when
  // the signal is shorter than one window without centering.
  std::size_t NumFrames(std::size_t length) const;

  friend bool operator==(const StftConfig &, const StftConfig &) = default;
};

// One-sided complex STFT, layout channels x frames x frequencies.
class Spectrogram {
 public:
  Spectrogram() = default;
  // Zero-filled; frame count follows config.NumFrames(original_length).
  Spectrogram(std::size_t num_channels, const StftConfig &config,
              std::size_t original_length, double sample_rate);

  std::size_t NumChannels() const { return num_channels_; }
  std::size_t NumFrames() const { return num_frames_; }
  std::size_t NumFrequencies() const { return num_freqs_; }
  const StftConfig &Config() const { return config_; }
  std::size_t OriginalLength() const { return original_length_; }
  double SampleRate() const { return sample_rate_; }

  Complex &operator()(std::size_t c, std::size_t t, std::size_t f) {
    return bins_[(c * num_frames_ + t) * num_freqs_ + f];
  }
  const Complex &operator()(std::size_t c, std::size_t t,
                            std::size_t f) const {
    return bins_[(c * num_frames_ + t) * num_freqs_ + f];
  }
  std::span<Complex> Frame(std::size_t c, std::size_t t) {
    return {bins_.data() + (c * num_frames_ + t) * num_freqs_, num_freqs_};
  }
  std::span<const Complex> Frame(std::size_t c, std::size_t t) const {
    return {bins_.data() + (c * num_frames_ + t) * num_freqs_, num_freqs_};
  }
  // All frames x frequencies bins of channel c.
  std::span<const Complex> ChannelBins(std::size_t c) const {
    return {bins_.data() + c * num_frames_ * num_freqs_,
            num_frames_ * num_freqs_};
  }
  std::span<Complex> ChannelBins(std::size_t c) {
    return {bins_.data() + c * num_frames_ * num_freqs_,
            num_frames_ * num_freqs_};
  }

  // Single-channel copy of channel c.
  Spectrogram ChannelSpectrogram(std::size_t c) const;

  // True when frame/frequency counts agree with the config.
  bool IsConsistent() const;

  const std::vector<Complex> &Bins() const { return bins_; }

  friend bool operator==(const Spectrogram &, const Spectrogram &) = default;

 private:
  std::size_t num_channels_ = 0;
  std::size_t num_frames_ = 0;
  std::size_t num_freqs_ = 0;
  StftConfig config_;
  std::size_t original_length_ = 0;
  double sample_rate_ = 16000.0;
  std::vector<Complex> bins_;
};

Spectrogram Stft(const Waveform &waveform, const StftConfig &config);

// Weighted overlap-add synthesis normalised by the accumulated squared-window
// envelope, trimmed to the original length. Samples whose envelope is zero
// (only possible without centering) come out as zero.
Waveform Istft(const Spectrogram &spec);

}  // namespace mcsep::dsp

#endif  // MCSEP_DSP_STFT_H_
