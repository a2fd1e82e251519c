// include/mcsep/dsp/waveform.h

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

#ifndef MCSEP_DSP_WAVEFORM_H_
#define MCSEP_DSP_WAVEFORM_H_

#include <cstddef>
#include <span>
#include <vector>

namespace mcsep::dsp {

// Channels x length block of real samples, stored channel-major.
class Waveform {
 public:
  Waveform() = default;
  // All-zero waveform.
  Waveform(std::size_t num_channels, std::size_t length, double sample_rate);
  // Takes ownership of channel-major samples; data.size() must equal
  // num_channels * length.
  Waveform(std::size_t num_channels, std::size_t length, double sample_rate,
           std::vector<double> data);

  static Waveform Mono(std::span<const double> samples, double sample_rate);
  static Waveform FromChannels(const std::vector<std::vector<double>> &channels,
                               double sample_rate);

  std::size_t NumChannels() const { return num_channels_; }
  std::size_t Length() const { return length_; }
  double SampleRate() const { return sample_rate_; }

  std::span<const double> Channel(std::size_t c) const {
    return {data_.data() + c * length_, length_};
  }
  std::span<double> Channel(std::size_t c) {
    return {data_.data() + c * length_, length_};
  }
  double operator()(std::size_t c, std::size_t n) const {
    return data_[c * length_ + n];
  }
  double &operator()(std::size_t c, std::size_t n) {
    return data_[c * length_ + n];
  }

  // Single-channel copy of channel c.
  Waveform ChannelWaveform(std::size_t c) const;

  const std::vector<double> &Data() const { return data_; }
  std::vector<double> &Data() { return data_; }

  bool AllFinite() const;

  friend bool operator==(const Waveform &, const Waveform &) = default;

 private:
  std::size_t num_channels_ = 0;
  std::size_t length_ = 0;
  double sample_rate_ = 16000.0;
  std::vector<double> data_;
};

}  // namespace mcsep::dsp

#endif  // MCSEP_DSP_WAVEFORM_H_
