// include/mcsep/pipeline/commands.h

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

#ifndef MCSEP_PIPELINE_COMMANDS_H_
#define MCSEP_PIPELINE_COMMANDS_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mcsep/pipeline/config.h"

namespace mcsep::pipeline {

// <output_dir>/scenes/<id> and <output_dir>/estimates/<id>.
std::string SceneDir(const PipelineConfig &config, const std::string &scene_id);
std::string EstimateDir(const PipelineConfig &config, const std::string &scene_id);

// Per-speaker MVDR processing flags, as frequency bin indices.
struct SpeakerFlags {
  std::vector<std::size_t> loaded;
  std::vector<std::size_t> passthrough;
};

struct SceneRecord {
  std::string scene_id;
  // Both indexed by reference speaker.
  std::vector<double> input_db;
  std::vector<double> output_db;
  // assignment[i] = reference matched to estimate i.
  std::vector<std::size_t> assignment;
  std::vector<SpeakerFlags> flags;  // empty for masking
  double seconds = 0.0;             // timing only
};

struct Aggregate {
  std::size_t num_scenes = 0;
  std::size_t num_pairs = 0;
  double mean_input_db = 0.0;
  double mean_output_db = 0.0;
  double mean_improvement_db = 0.0;
  std::size_t improved_pairs = 0;
};

struct RunReport {
  std::string version = kToolkitVersion;
  std::string config_echo;
  std::string metric;
  std::vector<SceneRecord> records;  // sorted by scene id
  Aggregate aggregate;
};

// Means over all speaker-scene pairs, summed in record order.
Aggregate ComputeAggregate(const std::vector<SceneRecord> &records);

// Line-delimited JSON: a header, one record per scene, then the aggregate.
// Timing is left out so equal runs give equal bytes.
std::string ReportJsonl(const RunReport &report);
std::string TimingJsonl(const RunReport &report);
std::string ReportTable(const RunReport &report);
// Writes report.jsonl, report.txt and timing.jsonl into output_dir.
void WriteReport(const PipelineConfig &config, const RunReport &report);

// Renders the manifest into scene directories (mixture.wav, source_k.wav,
// noise.wav, scene.json). Returns the scene ids in manifest order.
std::vector<std::string> CmdSimulate(const PipelineConfig &config);
// Separates every scene directory into est_k.wav plus flags.json.
std::vector<std::string> CmdSeparate(const PipelineConfig &config);
// Scores estimates against the reference images and writes the report.
RunReport CmdEvaluate(const PipelineConfig &config);
// Dispatches config.command; run-all chains all three.
RunReport RunPipeline(const PipelineConfig &config);

// Runs fn(0) .. fn(n-1) on up to `jobs` threads. The first exception by index
// is rethrown after all workers finish.
void ParallelFor(std::size_t n, std::size_t jobs,
                 const std::function<void(std::size_t)> &fn);

}  // namespace mcsep::pipeline

#endif  // MCSEP_PIPELINE_COMMANDS_H_
