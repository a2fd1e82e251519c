// src/pipeline/commands.cc

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

#include "mcsep/pipeline/commands.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mcsep/beamform/beamform.h"
#include "mcsep/masks/separator.h"
#include "mcsep/masks/tensor_file.h"
#include "mcsep/metrics/evaluate.h"
#include "mcsep/scene/manifest.h"
#include "mcsep/scene/wav.h"

namespace mcsep::pipeline {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string Join(const std::string &dir, const std::string &name) {
  return (fs::path(dir) / name).string();
}

std::string Numbered(const std::string &stem, std::size_t k) {
  return stem + "_" + std::to_string(k + 1) + ".wav";
}

void MakeDirs(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory " + dir + ": " + ec.message());
}

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json ParseJsonFile(const std::string &path) {
  try {
    return json::parse(ReadText(path));
  } catch (const json::exception &e) {
    throw InputError(path + ": " + e.what());
  }
}

// Number of consecutive <stem>_1.wav, <stem>_2.wav, ... files in dir.
std::size_t CountNumbered(const std::string &dir, const std::string &stem) {
  std::size_t k = 0;
  while (fs::exists(Join(dir, Numbered(stem, k)))) ++k;
  return k;
}

struct SceneMeta {
  std::size_t num_sources = 0;
  MicIndex reference_mic;
};

SceneMeta ReadSceneMeta(const std::string &dir) {
  SceneMeta meta;
  const std::string path = Join(dir, "scene.json");
  if (fs::exists(path)) {
    const json j = ParseJsonFile(path);
    try {
      meta.num_sources = j.at("num_sources").get<std::size_t>();
      meta.reference_mic = MicIndex::FromOneBased(j.at("reference_mic").get<long long>());
    } catch (const json::exception &e) {
      throw InputError(path + ": " + e.what());
    }
  } else {
    meta.num_sources = CountNumbered(dir, "source");
  }
  return meta;
}

MicIndex ResolveRef(const PipelineConfig &config, const SceneMeta &meta,
                    std::size_t num_channels) {
  const MicIndex ref = config.ref_mic.value_or(meta.reference_mic);
  ref.CheckWithin(num_channels);
  return ref;
}

std::vector<std::string> ListScenes(const PipelineConfig &config) {
  const std::string root = Join(config.output_dir, "scenes");
  if (!fs::is_directory(root))
    throw InputError("scene directory " + root + " does not exist");
  std::vector<std::string> ids;
  for (const auto &entry : fs::directory_iterator(root))
    if (entry.is_directory()) ids.push_back(entry.path().filename().string());
  std::sort(ids.begin(), ids.end());
  if (ids.empty()) throw InputError("no scenes under " + root);
  return ids;
}

masks::MaskSet SceneMasks(const PipelineConfig &config, const std::string &id,
                          const std::string &dir, const dsp::Waveform &mixture,
                          MicIndex ref, std::size_t num_sources) {
  if (!config.separator.mask_import_path.empty())
    return masks::ReadMaskSet(Join(config.separator.mask_import_path, id + ".tfm"),
                              num_sources);
  std::vector<std::string> needed;
  for (std::size_t k = 0; k < num_sources; ++k) needed.push_back(Numbered("source", k));
  needed.push_back("noise.wav");
  for (const std::string &name : needed)
    if (!fs::exists(Join(dir, name)))
      throw ConfigError("oracle masks need reference images but " +
                        Join(dir, name) + " is missing");
  const std::size_t r = ref.zero_based();
  std::vector<dsp::Spectrogram> images;
  for (const std::string &name : needed) {
    const dsp::Waveform image = scene::ReadWav(Join(dir, name));
    ref.CheckWithin(image.NumChannels());
    images.push_back(dsp::Stft(image.ChannelWaveform(r), config.stft));
  }
  const dsp::Spectrogram z = dsp::Stft(mixture.ChannelWaveform(r), config.stft);
  return masks::OracleMask(images, z, config.separator.mask_oracle_kind);
}

std::vector<std::size_t> Indices(const std::vector<bool> &flags) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < flags.size(); ++f)
    if (flags[f]) out.push_back(f);
  return out;
}

void SeparateOne(const PipelineConfig &config, const std::string &id) {
  const std::string dir = SceneDir(config, id);
  const SceneMeta meta = ReadSceneMeta(dir);
  if (meta.num_sources == 0) throw InputError(dir + ": scene has no sources");
  const dsp::Waveform mixture = scene::ReadWav(Join(dir, "mixture.wav"));
  const MicIndex ref = ResolveRef(config, meta, mixture.NumChannels());
  const masks::MaskSet masks =
      SceneMasks(config, id, dir, mixture, ref, meta.num_sources);

  masks::SeparatorOutput output;
  json flags = {{"scene_id", id}, {"method", MethodName(config.separator.method)}};
  json speakers = json::array();
  if (config.separator.method == Method::kMasking) {
    output = masks::SeparateMasking(mixture, masks, config.stft, ref);
  } else {
    beamform::MvdrSeparation sep =
        beamform::SeparateMvdr(mixture, masks, config.stft, ref, config.separator.mvdr);
    output = std::move(sep.output);
    for (const auto &w : sep.weights)
      speakers.push_back({{"loaded", Indices(w.loaded)},
                          {"passthrough", Indices(w.passthrough)}});
  }
  flags["speakers"] = speakers;

  const std::string out_dir = EstimateDir(config, id);
  MakeDirs(out_dir);
  for (std::size_t k = 0; k < output.streams.size(); ++k)
    scene::WriteWav(Join(out_dir, Numbered("est", k)), output.streams[k],
                    config.wav_format);
  WriteText(Join(out_dir, "flags.json"), flags.dump() + "\n");
}

std::vector<double> MonoSamples(const dsp::Waveform &wf, std::size_t channel) {
  const auto c = wf.Channel(channel);
  return {c.begin(), c.end()};
}

SceneRecord EvaluateOne(const PipelineConfig &config, const std::string &id) {
  const auto start = std::chrono::steady_clock::now();
  const std::string dir = SceneDir(config, id);
  const std::string est_dir = EstimateDir(config, id);
  const SceneMeta meta = ReadSceneMeta(dir);
  const std::size_t num_est = CountNumbered(est_dir, "est");
  if (num_est != meta.num_sources)
    throw InputError(id + ": " + std::to_string(num_est) + " estimates for " +
                     std::to_string(meta.num_sources) + " references");
  if (num_est == 0) throw InputError(id + ": no estimates in " + est_dir);

  const dsp::Waveform mixture = scene::ReadWav(Join(dir, "mixture.wav"));
  const MicIndex ref = ResolveRef(config, meta, mixture.NumChannels());
  const std::size_t r = ref.zero_based();

  std::vector<std::vector<double>> references, estimates;
  for (std::size_t k = 0; k < meta.num_sources; ++k) {
    const std::string path = Join(dir, Numbered("source", k));
    const dsp::Waveform image = scene::ReadWav(path);
    ref.CheckWithin(image.NumChannels());
    if (image.Length() != mixture.Length())
      throw InputError(path + ": length differs from the mixture");
    references.push_back(MonoSamples(image, r));
  }
  for (std::size_t k = 0; k < num_est; ++k) {
    const std::string path = Join(est_dir, Numbered("est", k));
    const dsp::Waveform est = scene::ReadWav(path);
    if (est.NumChannels() != 1) throw InputError(path + ": estimates must be mono");
    if (est.Length() != mixture.Length())
      throw InputError(path + ": length differs from the mixture");
    estimates.push_back(MonoSamples(est, 0));
  }

  SceneRecord record;
  record.scene_id = id;
  for (const auto &s : references)
    record.input_db.push_back(
        metrics::Score(config.metric, mixture.Channel(r), s, config.metric_config));
  const metrics::SeparationScores scores = metrics::EvaluateSeparation(
      estimates, references, config.metric, config.metric_config);
  record.output_db = scores.per_speaker_db;
  record.assignment = scores.assignment.permutation;

  const std::string flags_path = Join(est_dir, "flags.json");
  if (fs::exists(flags_path)) {
    const json flags = ParseJsonFile(flags_path);
    try {
      for (const json &s : flags.at("speakers"))
        record.flags.push_back({s.at("loaded").get<std::vector<std::size_t>>(),
                                s.at("passthrough").get<std::vector<std::size_t>>()});
    } catch (const json::exception &e) {
      throw InputError(flags_path + ": " + e.what());
    }
  }
  record.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

}  // namespace

std::string SceneDir(const PipelineConfig &config, const std::string &scene_id) {
  return (fs::path(config.output_dir) / "scenes" / scene_id).string();
}

std::string EstimateDir(const PipelineConfig &config, const std::string &scene_id) {
  return (fs::path(config.output_dir) / "estimates" / scene_id).string();
}

void ParallelFor(std::size_t n, std::size_t jobs,
                 const std::function<void(std::size_t)> &fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(jobs, 1), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::string> CmdSimulate(const PipelineConfig &config) {
  config.Validate();
  const std::vector<scene::SceneSpec> specs =
      scene::LoadManifest(config.scene_manifest, config.seed);
  std::set<std::string> seen;
  std::vector<std::string> ids;
  for (const auto &spec : specs) {
    if (!seen.insert(spec.id).second)
      throw ConfigError("duplicate scene id '" + spec.id + "' in manifest");
    if (spec.id.empty() || spec.id.find('/') != std::string::npos || spec.id == "." ||
        spec.id == "..")
      throw ConfigError("scene id '" + spec.id + "' is not a valid directory name");
    ids.push_back(spec.id);
  }
  ParallelFor(specs.size(), config.jobs, [&](std::size_t i) {
    const scene::SceneSpec &spec = specs[i];
    const scene::SceneOutput out =
        scene::QuantizeScene(scene::RenderScene(spec), config.wav_format);
    if (scene::DecompositionResidual(out, config.wav_format) != 0.0)
      throw NumericalError(spec.id + ": stored scene does not decompose exactly");
    const std::string dir = SceneDir(config, spec.id);
    MakeDirs(dir);
    scene::WriteWav(Join(dir, "mixture.wav"), out.mixture, config.wav_format);
    for (std::size_t k = 0; k < out.source_images.size(); ++k)
      scene::WriteWav(Join(dir, Numbered("source", k)), out.source_images[k],
                      config.wav_format);
    scene::WriteWav(Join(dir, "noise.wav"), out.noise_image, config.wav_format);
    WriteText(Join(dir, "scene.json"), scene::SceneEcho(spec, out) + "\n");
  });
  return ids;
}

std::vector<std::string> CmdSeparate(const PipelineConfig &config) {
  config.Validate();
  const std::vector<std::string> ids = ListScenes(config);
  ParallelFor(ids.size(), config.jobs,
              [&](std::size_t i) { SeparateOne(config, ids[i]); });
  return ids;
}

RunReport CmdEvaluate(const PipelineConfig &config) {
  config.Validate();
  const std::vector<std::string> ids = ListScenes(config);
  RunReport report;
  report.config_echo = ConfigEcho(config);
  report.metric = metrics::MetricName(config.metric);
  report.records.resize(ids.size());
  ParallelFor(ids.size(), config.jobs,
              [&](std::size_t i) { report.records[i] = EvaluateOne(config, ids[i]); });
  report.aggregate = ComputeAggregate(report.records);
  WriteReport(config, report);
  return report;
}

RunReport RunPipeline(const PipelineConfig &config) {
  switch (config.command) {
    case Command::kSimulate:
      CmdSimulate(config);
      return {};
    case Command::kSeparate:
      CmdSeparate(config);
      return {};
    case Command::kEvaluate:
      return CmdEvaluate(config);
    case Command::kRunAll:
      break;
  }
  // run-all starts from empty scene and estimate trees.
  std::error_code ec;
  fs::remove_all(fs::path(config.output_dir) / "scenes", ec);
  fs::remove_all(fs::path(config.output_dir) / "estimates", ec);
  CmdSimulate(config);
  CmdSeparate(config);
  return CmdEvaluate(config);
}

}  // namespace mcsep::pipeline
