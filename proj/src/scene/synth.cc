// src/scene/synth.cc

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

#include "mcsep/scene/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

namespace mcsep::scene {

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<double> SynthesizeSpeechLike(std::size_t length, double sample_rate,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * uni(rng); };

  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<double> out(length, 0.0);
  const double base_f0 = between(90.0, 220.0);
  const double nyquist_guard = std::min(4000.0, 0.45 * sample_rate);
  // f0 stays above 67 Hz, so at most 59 harmonics fit under the guard.
  double phase = between(0.0, kTwoPi);
  double noise_state = 0.0;
  std::vector<double> rolloff(64, 0.0);
  for (std::size_t h = 1; h < rolloff.size(); ++h)
    rolloff[h] = std::pow(static_cast<double>(h), -0.8);
  std::vector<double> amps(rolloff.size(), 0.0);
  int harmonics = 0;

  std::size_t pos = static_cast<std::size_t>(between(0.0, 0.15) * sample_rate);
  while (pos < length) {
    const auto syllable =
        static_cast<std::size_t>(between(0.12, 0.30) * sample_rate);
    const double f1 = between(300.0, 850.0);
    const double f2 = between(900.0, 2400.0);
    const double glide = between(-0.25, 0.25);
    const double level = between(0.5, 1.0);
    const bool fricative = uni(rng) < 0.3;
    const auto burst =
        fricative ? static_cast<std::size_t>(between(0.04, 0.10) * sample_rate) : 0;

    const std::size_t end = std::min(length, pos + burst + syllable);
    for (std::size_t n = pos; n < end; ++n) {
      const std::size_t i = n - pos;
      double v = 0.0;
      if (i < burst) {
        // First-differenced white noise: a crude high-pass fricative.
        const double w = gauss(rng);
        v = 0.3 * (w - noise_state);
        noise_state = w;
        const double x = static_cast<double>(i) / static_cast<double>(burst);
        v *= std::sin(std::numbers::pi * x);
      } else {
        const double x = static_cast<double>(i - burst) / static_cast<double>(syllable);
        const double f0 = base_f0 * (1.0 + glide * x);
        phase += kTwoPi * f0 / sample_rate;
        if (phase > kTwoPi) phase -= kTwoPi;
        // Harmonic amplitudes follow the slow f0 glide; refresh per block.
        if ((i - burst) % 32 == 0) {
          harmonics = static_cast<int>(nyquist_guard / f0);
          for (int h = 1; h <= harmonics; ++h) {
            const double fh = f0 * h;
            const double d1 = (fh - f1) / 120.0, d2 = (fh - f2) / 180.0;
            amps[static_cast<std::size_t>(h)] =
                (1.0 + 4.0 * std::exp(-d1 * d1) + 2.5 * std::exp(-d2 * d2)) *
                rolloff[static_cast<std::size_t>(h)];
          }
        }
        // sin(h phase) by the Chebyshev recurrence.
        const double two_cos = 2.0 * std::cos(phase);
        double s_prev = 0.0, s_cur = std::sin(phase);
        for (int h = 1; h <= harmonics; ++h) {
          v += amps[static_cast<std::size_t>(h)] * s_cur;
          const double s_next = two_cos * s_cur - s_prev;
          s_prev = s_cur;
          s_cur = s_next;
        }
        v *= 0.1 * std::pow(std::sin(std::numbers::pi * x), 0.6);
      }
      out[n] += level * v;
    }
    pos = end;
    const double gap = uni(rng) < 0.2 ? between(0.2, 0.4) : between(0.03, 0.15);
    pos += static_cast<std::size_t>(gap * sample_rate);
  }

  double energy = 0.0;
  for (double v : out) energy += v * v;
  if (energy > 0.0) {
    const double gain = 0.05 / std::sqrt(energy / static_cast<double>(length));
    for (double &v : out) v *= gain;
  }
  return out;
}

std::vector<SceneSpec> MakeSuite(const SuiteConfig &config) {
  config.geometry.Validate();
  if (config.num_sources == 0) throw ConfigError("suite needs >= 1 source");
  const double min_sep = config.min_separation_deg * std::numbers::pi / 180.0;
  if (min_sep * static_cast<double>(config.num_sources) > 2.0 * std::numbers::pi)
    throw ConfigError("cannot place sources with the requested separation");
  const auto length =
      static_cast<std::size_t>(std::llround(config.duration_s * config.sample_rate));

  std::vector<SceneSpec> suite;
  for (std::size_t s = 0; s < config.num_scenes; ++s) {
    const std::uint64_t scene_seed = MixSeed(config.seed, s);
    std::mt19937_64 rng(scene_seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);

    std::vector<double> azimuths;
    std::size_t draws = 0;
    while (azimuths.size() < config.num_sources) {
      if (++draws > 1000000)
        throw ConfigError("cannot place sources with the requested separation");
      // restart a placement that has painted itself into a corner
      if (draws % 10000 == 0) azimuths.clear();
      const double az = uni(rng);
      const bool ok = std::all_of(azimuths.begin(), azimuths.end(), [&](double other) {
        const double d = std::abs(std::remainder(az - other, 2.0 * std::numbers::pi));
        return d >= min_sep;
      });
      if (ok) azimuths.push_back(az);
    }

    SceneSpec spec;
    char id[32];
    std::snprintf(id, sizeof id, "scene%03zu", s);
    spec.id = id;
    spec.geometry = config.geometry;
    spec.reference_mic = config.reference_mic;
    spec.seed = scene_seed;
    for (std::size_t k = 0; k < config.num_sources; ++k) {
      const std::uint64_t source_seed = MixSeed(scene_seed, k + 1);
      SourceSpec src;
      src.dry = dsp::Waveform::Mono(
          SynthesizeSpeechLike(length, config.sample_rate, source_seed),
          config.sample_rate);
      src.azimuth = azimuths[k];
      src.origin = "speech_like:" + std::to_string(source_seed);
      spec.sources.push_back(std::move(src));
    }
    if (config.snr_db) {
      NoiseSpec noise;
      noise.kind = NoiseKind::kWhiteGaussian;
      noise.snr_db = *config.snr_db;
      spec.noise = noise;
    }
    suite.push_back(std::move(spec));
  }
  return suite;
}

}  // namespace mcsep::scene
