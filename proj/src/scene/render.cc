// src/scene/render.cc

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
#include <cstdint>
#include <random>
#include <string>

#include "mcsep/scene/scene.h"

namespace mcsep::scene {

namespace {

double MeanPower(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

std::vector<double> SourceSum(const SceneOutput &scene, std::size_t channel) {
  std::vector<double> sum(
      scene.source_images.empty() ? 0 : scene.source_images.front().Length(), 0.0);
  for (const auto &image : scene.source_images) {
    auto x = image.Channel(channel);
    for (std::size_t n = 0; n < sum.size(); ++n) sum[n] += x[n];
  }
  return sum;
}

}  // namespace

void SceneSpec::Validate() const {
  if (sources.empty()) throw ConfigError("scene '" + id + "' has no sources");
  geometry.Validate();
  reference_mic.CheckWithin(geometry.NumMics());
  const double rate = sources.front().dry.SampleRate();
  for (const SourceSpec &s : sources) {
    if (s.dry.NumChannels() != 1)
      throw InputError("dry source '" + s.origin + "' must be mono");
    if (s.dry.SampleRate() != rate)
      throw InputError("dry sources of scene '" + id +
                       "' have mismatched sample rates");
    if (!s.dry.AllFinite())
      throw InputError("dry source '" + s.origin + "' has non-finite samples");
    if (!std::isfinite(s.azimuth) || !std::isfinite(s.elevation) ||
        !std::isfinite(s.gain))
      throw ConfigError("source direction and gain must be finite");
  }
  if (noise) {
    if (!std::isfinite(noise->snr_db))
      throw ConfigError("snr_db must be finite");
    if (noise->kind == NoiseKind::kFile) {
      if (noise->recording.NumChannels() != geometry.NumMics())
        throw InputError("noise recording '" + noise->path + "' has " +
                         std::to_string(noise->recording.NumChannels()) +
                         " channels, array has " +
                         std::to_string(geometry.NumMics()));
      if (noise->recording.SampleRate() != rate)
        throw InputError("noise recording sample rate differs from sources");
    }
  }
}

SceneOutput RenderScene(const SceneSpec &spec) {
  spec.Validate();
  const std::size_t num_mics = spec.geometry.NumMics();
  const double rate = spec.sources.front().dry.SampleRate();
  std::size_t length = 0;
  for (const auto &s : spec.sources) length = std::max(length, s.dry.Length());
  if (length == 0) throw InputError("dry sources are empty");

  SceneOutput out;
  out.resolved.sample_rate = rate;
  out.resolved.length = length;
  out.resolved.reference_mic = spec.reference_mic;

  std::vector<double> dry(length);
  for (const SourceSpec &s : spec.sources) {
    std::fill(dry.begin(), dry.end(), 0.0);
    std::copy(s.dry.Data().begin(), s.dry.Data().end(), dry.begin());
    const std::vector<double> tau =
        SteeringDelays(spec.geometry, s.azimuth, s.elevation);
    dsp::Waveform image(num_mics, length, rate);
    std::vector<double> delays;
    for (std::size_t m = 0; m < num_mics; ++m) {
      const double d = tau[m] * rate;
      delays.push_back(d);
      const std::vector<double> shifted = FractionalDelay(dry, d);
      auto dst = image.Channel(m);
      for (std::size_t n = 0; n < length; ++n) dst[n] = s.gain * shifted[n];
    }
    out.resolved.delays_samples.push_back(std::move(delays));
    out.resolved.gains.push_back(s.gain);
    out.source_images.push_back(std::move(image));
  }

  dsp::Waveform noise(num_mics, length, rate);
  if (spec.noise) {
    const std::size_t r = spec.reference_mic.zero_based();
    if (spec.noise->kind == NoiseKind::kWhiteGaussian) {
      std::mt19937_64 rng(spec.seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (double &v : noise.Data()) v = gauss(rng);
    } else {
      const dsp::Waveform &rec = spec.noise->recording;
      if (rec.Length() < length)
        throw InputError("noise recording '" + spec.noise->path +
                         "' is shorter than the scene");
      for (std::size_t m = 0; m < num_mics; ++m)
        std::copy_n(rec.Channel(m).begin(), length, noise.Channel(m).begin());
    }
    const double p_signal = MeanPower(SourceSum(out, r));
    const double p_noise = MeanPower(noise.Channel(r));
    if (!(p_signal > 0.0))
      throw InputError("scene '" + spec.id +
                       "' has zero source power at the reference mic; "
                       "cannot set an SNR");
    if (!(p_noise > 0.0))
      throw InputError("noise for scene '" + spec.id +
                       "' has zero power at the reference mic");
    const double scale =
        std::sqrt(p_signal / (p_noise * std::pow(10.0, spec.noise->snr_db / 10.0)));
    for (double &v : noise.Data()) v *= scale;
    out.resolved.noise_scale = scale;
  }

  // Fixed summation order: sources in index order, then noise.
  out.mixture = dsp::Waveform(num_mics, length, rate);
  auto &mix = out.mixture.Data();
  for (const auto &image : out.source_images)
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += image.Data()[i];
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += noise.Data()[i];

  out.noise_image = dsp::Waveform(num_mics, length, rate);
  auto &residual = out.noise_image.Data();
  residual = mix;
  for (const auto &image : out.source_images)
    for (std::size_t i = 0; i < residual.size(); ++i)
      residual[i] -= image.Data()[i];

  out.resolved.achieved_snr_db = MeasuredSnrDb(out);
  if (!spec.noise) out.resolved.achieved_snr_db.reset();
  return out;
}

double DecompositionResidual(const SceneOutput &scene) {
  double worst = 0.0;
  const auto &mix = scene.mixture.Data();
  for (std::size_t i = 0; i < mix.size(); ++i) {
    double v = mix[i];
    for (const auto &image : scene.source_images) v -= image.Data()[i];
    v -= scene.noise_image.Data()[i];
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

double DecompositionResidual(const SceneOutput &scene, SampleFormat format) {
  double worst = 0.0;
  const auto &mix = scene.mixture.Data();
  for (std::size_t i = 0; i < mix.size(); ++i) {
    if (format == SampleFormat::kFloat32) {
      float v = static_cast<float>(mix[i]);
      for (const auto &image : scene.source_images)
        v -= static_cast<float>(image.Data()[i]);
      v -= static_cast<float>(scene.noise_image.Data()[i]);
      worst = std::max(worst, static_cast<double>(std::abs(v)));
    } else {
      auto count = [](double x) {
        return static_cast<std::int64_t>(std::nearbyint(x * 32768.0));
      };
      std::int64_t v = count(mix[i]);
      for (const auto &image : scene.source_images) v -= count(image.Data()[i]);
      v -= count(scene.noise_image.Data()[i]);
      worst = std::max(worst, std::abs(static_cast<double>(v)) / 32768.0);
    }
  }
  return worst;
}

SceneOutput QuantizeScene(const SceneOutput &scene, SampleFormat format) {
  SceneOutput out = scene;
  for (auto &image : out.source_images)
    for (double &v : image.Data()) v = Quantize(v, format);
  for (double &v : out.mixture.Data()) v = Quantize(v, format);

  auto &residual = out.noise_image.Data();
  const auto &mix = out.mixture.Data();
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (format == SampleFormat::kFloat32) {
      float v = static_cast<float>(mix[i]);
      for (const auto &image : out.source_images)
        v -= static_cast<float>(image.Data()[i]);
      residual[i] = static_cast<double>(v);
    } else {
      auto count = [](double x) {
        return static_cast<std::int64_t>(std::nearbyint(x * 32768.0));
      };
      std::int64_t v = count(mix[i]);
      for (const auto &image : out.source_images) v -= count(image.Data()[i]);
      if (v < -32768 || v > 32767)
        throw InputError("noise residual does not fit in PCM16; "
                         "use float32 output");
      residual[i] = static_cast<double>(v) / 32768.0;
    }
  }
  out.resolved.achieved_snr_db = MeasuredSnrDb(out);
  if (!scene.resolved.achieved_snr_db) out.resolved.achieved_snr_db.reset();
  return out;
}

std::optional<double> MeasuredSnrDb(const SceneOutput &scene) {
  const std::size_t r = scene.resolved.reference_mic.zero_based();
  const double p_noise = MeanPower(scene.noise_image.Channel(r));
  if (!(p_noise > 0.0)) return std::nullopt;
  return 10.0 * std::log10(MeanPower(SourceSum(scene, r)) / p_noise);
}

std::vector<double> InputSdr(const SceneOutput &scene, metrics::Metric metric,
                             const metrics::MetricConfig &config) {
  const std::size_t r = scene.resolved.reference_mic.zero_based();
  std::vector<double> scores;
  for (const auto &image : scene.source_images)
    scores.push_back(
        metrics::Score(metric, scene.mixture.Channel(r), image.Channel(r), config));
  return scores;
}

}  // namespace mcsep::scene
