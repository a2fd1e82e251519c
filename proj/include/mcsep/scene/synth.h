// include/mcsep/scene/synth.h

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

#ifndef MCSEP_SCENE_SYNTH_H_
#define MCSEP_SCENE_SYNTH_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "mcsep/scene/scene.h"

namespace mcsep::scene {

// Deterministic speech-like test signal: syllables of a gliding harmonic
// source with two formant resonances, short fricative noise bursts and
// pauses. Normalised to an RMS of 0.05.
std::vector<double> SynthesizeSpeechLike(std::size_t length, double sample_rate,
                                         std::uint64_t seed);

// Seeded batch of far-field scenes with speech-like sources at random
// azimuths whose pairwise separation is at least min_separation_deg.
struct SuiteConfig {
  std::size_t num_scenes = 100;
  std::size_t num_sources = 2;
  double duration_s = 4.0;
  double sample_rate = 16000.0;
  double min_separation_deg = 30.0;
  ArrayGeometry geometry = ArrayGeometry::Circular(8, 0.05);
  MicIndex reference_mic;
  // White Gaussian noise at this SNR; nullopt renders noiseless scenes.
  std::optional<double> snr_db = 30.0;
  std::uint64_t seed = 0;
};

std::vector<SceneSpec> MakeSuite(const SuiteConfig &config);

// SplitMix64 step, used to derive per-scene and per-source seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mcsep::scene

#endif  // MCSEP_SCENE_SYNTH_H_
