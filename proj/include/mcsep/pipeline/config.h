// include/mcsep/pipeline/config.h

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

#ifndef MCSEP_PIPELINE_CONFIG_H_
#define MCSEP_PIPELINE_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "mcsep/beamform/beamform.h"
#include "mcsep/common.h"
#include "mcsep/dsp/stft.h"
#include "mcsep/masks/masks.h"
#include "mcsep/metrics/sdr.h"
#include "mcsep/scene/wav.h"

namespace mcsep::pipeline {

inline constexpr const char *kToolkitVersion = "0.1.0";

enum class Command { kSimulate, kSeparate, kEvaluate, kRunAll };
Command ParseCommand(const std::string &name);
std::string CommandName(Command command);

enum class Method { kMasking, kMvdr };
Method ParseMethod(const std::string &name);
std::string MethodName(Method method);

struct SeparatorConfig {
  masks::MaskKind mask_oracle_kind = masks::MaskKind::kIrm;
  // Directory holding <scene id>.tfm mask tensors. Empty selects oracle masks.
  std::string mask_import_path;
  Method method = Method::kMvdr;
  beamform::MvdrOptions mvdr;
};

struct PipelineConfig {
  Command command = Command::kRunAll;
  std::string scene_manifest;
  dsp::StftConfig stft;
  SeparatorConfig separator;
  // Unset: each scene's own reference microphone.
  std::optional<MicIndex> ref_mic;
  metrics::Metric metric = metrics::Metric::kSiSdr;
  metrics::MetricConfig metric_config;
  std::string output_dir = "out";
  // Overrides the manifest seed when set.
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  scene::SampleFormat wav_format = scene::SampleFormat::kFloat32;

  // Throws ConfigError on invalid values. Paths are checked when used.
  void Validate() const;
};

// JSON config document; see README for keys. Relative paths resolve against
// base_dir. Unknown keys are a ConfigError.
PipelineConfig ParsePipelineConfig(const std::string &text,
                                   const std::string &base_dir);
PipelineConfig LoadPipelineConfig(const std::string &path);

// Canonical JSON rendering of the effective configuration.
std::string ConfigEcho(const PipelineConfig &config);

}  // namespace mcsep::pipeline

#endif  // MCSEP_PIPELINE_CONFIG_H_
