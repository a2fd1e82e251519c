// include/mcsep/scene/scene.h

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

#ifndef MCSEP_SCENE_SCENE_H_
#define MCSEP_SCENE_SCENE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcsep/common.h"
#include "mcsep/dsp/waveform.h"
#include "mcsep/metrics/sdr.h"
#include "mcsep/scene/geometry.h"
#include "mcsep/scene/wav.h"

namespace mcsep::scene {

struct SourceSpec {
  dsp::Waveform dry;  // mono
  double azimuth = 0.0;    // radians
  double elevation = 0.0;  // radians
  double gain = 1.0;
  std::string origin;  // file path or generator description, echoed only
};

enum class NoiseKind { kWhiteGaussian, kFile };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kWhiteGaussian;
  // Ratio of summed source-image power to noise power at the reference mic.
  double snr_db = 30.0;
  // kFile only: one channel per microphone, at least as long as the scene.
  dsp::Waveform recording;
  std::string path;
};

struct SceneSpec {
  std::string id = "scene";
  std::vector<SourceSpec> sources;
  std::optional<NoiseSpec> noise;
  ArrayGeometry geometry;
  MicIndex reference_mic;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct ResolvedScene {
  double sample_rate = 16000.0;
  std::size_t length = 0;
  MicIndex reference_mic;
  // delays_samples[k][m]
  std::vector<std::vector<double>> delays_samples;
  std::vector<double> gains;
  double noise_scale = 0.0;
  std::optional<double> achieved_snr_db;
};

struct SceneOutput {
  dsp::Waveform mixture;
  std::vector<dsp::Waveform> source_images;
  dsp::Waveform noise_image;
  ResolvedScene resolved;
};

// Renders mixture = sum_k image_k + noise. Images are gain_k times the dry
// signal fractionally delayed by the plane-wave arrival delay at each mic.
// Dry signals shorter than the longest are zero-padded. The stored noise image
// is the exact residual ((mixture - image_1) - image_2 ...), so subtracting
// the images from the mixture in source order reproduces it bit for bit.
SceneOutput RenderScene(const SceneSpec &spec);

// Largest |((mixture - image_1) - ... - image_K) - noise| over all samples,
// evaluated in double precision.
double DecompositionResidual(const SceneOutput &scene);

// Same check carried out in the arithmetic of a storage format: float for
// float32, integer sample counts for PCM16.
double DecompositionResidual(const SceneOutput &scene, SampleFormat format);

// Rounds every component to `format` so that the scene survives a WAV
// write/read cycle unchanged while the decomposition stays exact in that
// format's arithmetic. Throws InputError if the PCM16 noise residual does not
// fit in 16 bits.
SceneOutput QuantizeScene(const SceneOutput &scene, SampleFormat format);

// 10 log10(P_sources / P_noise) at the reference mic; nullopt without noise.
std::optional<double> MeasuredSnrDb(const SceneOutput &scene);

// Metric of the mixture's reference channel against each source image's
// reference channel.
std::vector<double> InputSdr(const SceneOutput &scene, metrics::Metric metric,
                             const metrics::MetricConfig &config = {});

}  // namespace mcsep::scene

#endif  // MCSEP_SCENE_SCENE_H_
