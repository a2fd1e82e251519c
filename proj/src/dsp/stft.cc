// src/dsp/stft.cc

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

#include "mcsep/dsp/stft.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcsep/dsp/fft.h"

namespace mcsep::dsp {

void StftConfig::Validate() const {
  if (window_length < 2) throw ConfigError("window_length must be >= 2");
  if (hop < 1 || hop > window_length)
    throw ConfigError("hop must lie in [1, window_length]");
  if (fft_size < window_length)
    throw ConfigError("fft_size must be >= window_length");
  if ((fft_size & (fft_size - 1)) != 0)
    throw ConfigError("fft_size must be a power of two, got " +
                      std::to_string(fft_size));
  const std::vector<double> w = MakeWindow(window_kind, window_length);
  // Steady-state squared-window envelope; the synthesis normalisation divides
  // by it, so it has to stay away from zero.
  double lo = INFINITY, hi = 0.0;
  for (std::size_t n = 0; n < hop; ++n) {
    double acc = 0.0;
    for (std::size_t i = n; i < window_length; i += hop) acc += w[i] * w[i];
    lo = std::min(lo, acc);
    hi = std::max(hi, acc);
  }
  if (!(lo > 1e-10 * hi))
    throw ConfigError("window/hop pair " + std::to_string(window_length) + "/" +
                      std::to_string(hop) +
                      " does not satisfy the overlap-add condition");
}

std::size_t StftConfig::NumFrames(std::size_t length) const {
  const std::size_t padded = length + 2 * PadLength();
  if (padded < window_length)
    throw InputError("signal of " + std::to_string(length) +
                     " samples is shorter than the " +
                     std::to_string(window_length) + "-sample window");
  return 1 + (padded - window_length + hop - 1) / hop;
}

Spectrogram::Spectrogram(std::size_t num_channels, const StftConfig &config,
                         std::size_t original_length, double sample_rate)
    : num_channels_(num_channels),
      num_frames_(config.NumFrames(original_length)),
      num_freqs_(config.NumFrequencies()),
      config_(config),
      original_length_(original_length),
      sample_rate_(sample_rate),
      bins_(num_channels_ * num_frames_ * num_freqs_) {}

Spectrogram Spectrogram::ChannelSpectrogram(std::size_t c) const {
  Spectrogram out(1, config_, original_length_, sample_rate_);
  auto src = ChannelBins(c);
  std::copy(src.begin(), src.end(), out.bins_.begin());
  return out;
}

bool Spectrogram::IsConsistent() const {
  if (num_freqs_ != config_.NumFrequencies()) return false;
  if (bins_.size() != num_channels_ * num_frames_ * num_freqs_) return false;
  try {
    return num_frames_ == config_.NumFrames(original_length_);
  } catch (const InputError &) {
    return false;
  }
}

Spectrogram Stft(const Waveform &waveform, const StftConfig &config) {
  config.Validate();
  if (!waveform.AllFinite())
    throw InputError("waveform contains non-finite samples");
  Spectrogram spec(waveform.NumChannels(), config, waveform.Length(),
                   waveform.SampleRate());
  const std::vector<double> window =
      MakeWindow(config.window_kind, config.window_length);
  const std::size_t length = waveform.Length();
  const auto pad = static_cast<std::ptrdiff_t>(config.PadLength());
  RealFft fft(config.fft_size);
  std::vector<double> frame(config.window_length);

  for (std::size_t c = 0; c < waveform.NumChannels(); ++c) {
    auto x = waveform.Channel(c);
    for (std::size_t t = 0; t < spec.NumFrames(); ++t) {
      const std::ptrdiff_t start =
          static_cast<std::ptrdiff_t>(t * config.hop) - pad;
      for (std::size_t n = 0; n < config.window_length; ++n) {
        const std::ptrdiff_t idx = start + static_cast<std::ptrdiff_t>(n);
        const double v = (idx >= 0 && static_cast<std::size_t>(idx) < length)
                             ? x[static_cast<std::size_t>(idx)]
                             : 0.0;
        frame[n] = window[n] * v;
      }
      fft.Forward(frame, spec.Frame(c, t));
    }
  }
  return spec;
}

Waveform Istft(const Spectrogram &spec) {
  if (!spec.IsConsistent())
    throw InputError("spectrogram shape inconsistent with its STFT config");
  const StftConfig &config = spec.Config();
  config.Validate();
  const std::size_t length = spec.OriginalLength();
  const std::size_t win = config.window_length;
  const std::size_t pad = config.PadLength();
  const std::vector<double> window = MakeWindow(config.window_kind, win);

  // Envelope of squared windows over the padded time axis.
  const std::size_t span = (spec.NumFrames() - 1) * config.hop + win;
  std::vector<double> envelope(span, 0.0);
  for (std::size_t t = 0; t < spec.NumFrames(); ++t)
    for (std::size_t n = 0; n < win; ++n)
      envelope[t * config.hop + n] += window[n] * window[n];

  Waveform out(spec.NumChannels(), length, spec.SampleRate());
  RealFft fft(config.fft_size);
  std::vector<double> frame(config.fft_size);
  std::vector<double> acc(span);
  for (std::size_t c = 0; c < spec.NumChannels(); ++c) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t t = 0; t < spec.NumFrames(); ++t) {
      fft.Inverse(spec.Frame(c, t), frame);
      double *dst = acc.data() + t * config.hop;
      for (std::size_t n = 0; n < win; ++n) dst[n] += window[n] * frame[n];
    }
    auto y = out.Channel(c);
    for (std::size_t i = 0; i < length; ++i) {
      const double e = envelope[i + pad];
      y[i] = e > 0.0 ? acc[i + pad] / e : 0.0;
    }
  }
  return out;
}

}  // namespace mcsep::dsp
