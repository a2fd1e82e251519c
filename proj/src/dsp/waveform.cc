// src/dsp/waveform.cc

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

#include "mcsep/dsp/waveform.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcsep/common.h"

namespace mcsep::dsp {

Waveform::Waveform(std::size_t num_channels, std::size_t length,
                   double sample_rate)
    : num_channels_(num_channels),
      length_(length),
      sample_rate_(sample_rate),
      data_(num_channels * length, 0.0) {}

Waveform::Waveform(std::size_t num_channels, std::size_t length,
                   double sample_rate, std::vector<double> data)
    : num_channels_(num_channels),
      length_(length),
      sample_rate_(sample_rate),
      data_(std::move(data)) {
  if (data_.size() != num_channels_ * length_)
    throw InputError("waveform data size " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(num_channels_) +
                     " channels x " + std::to_string(length_) + " samples");
}

Waveform Waveform::Mono(std::span<const double> samples, double sample_rate) {
  return Waveform(1, samples.size(), sample_rate,
                  std::vector<double>(samples.begin(), samples.end()));
}

Waveform Waveform::FromChannels(const std::vector<std::vector<double>> &channels,
                                double sample_rate) {
  if (channels.empty()) return Waveform(0, 0, sample_rate);
  const std::size_t length = channels.front().size();
  std::vector<double> data;
  data.reserve(channels.size() * length);
  for (const auto &ch : channels) {
    if (ch.size() != length)
      throw InputError("all channels must have equal length");
    data.insert(data.end(), ch.begin(), ch.end());
  }
  return Waveform(channels.size(), length, sample_rate, std::move(data));
}

Waveform Waveform::ChannelWaveform(std::size_t c) const {
  return Mono(Channel(c), sample_rate_);
}

bool Waveform::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace mcsep::dsp
