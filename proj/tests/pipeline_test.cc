// tests/pipeline_test.cc

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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "mcsep/beamform/beamform.h"
#include "mcsep/masks/masks.h"
#include "mcsep/masks/tensor_file.h"
#include "mcsep/pipeline/commands.h"
#include "mcsep/pipeline/config.h"
#include "mcsep/scene/manifest.h"
#include "mcsep/scene/wav.h"

namespace mcsep::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string TempDir(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("mcsep_pipeline_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream(path, std::ios::binary) << text;
}

int RunCli(const std::string &args) {
  const std::string cmd = std::string(MCSEP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Two short scenes on a four-mic line.
const char *kSmallManifest = R"({
  "sample_rate": 16000, "seed": 5, "reference_mic": 1,
  "geometry": {"type": "linear", "num_mics": 4, "spacing": 0.04},
  "scenes": [
    {"id": "b", "sources": [{"synthetic": {"duration_s": 0.5}, "azimuth_deg": 30},
                            {"synthetic": {"duration_s": 0.5}, "azimuth_deg": 120}],
     "noise": {"kind": "white_gaussian", "snr_db": 25}},
    {"id": "a", "sources": [{"synthetic": {"duration_s": 0.5}, "azimuth_deg": 60},
                            {"synthetic": {"duration_s": 0.5}, "azimuth_deg": 150}],
     "noise": {"kind": "white_gaussian", "snr_db": 15}}
  ]})";

PipelineConfig SmallConfig(const std::string &dir) {
  WriteText(dir + "/manifest.json", kSmallManifest);
  PipelineConfig c;
  c.scene_manifest = dir + "/manifest.json";
  c.stft = dsp::StftConfig::Hann(256, 64);
  c.output_dir = dir + "/out";
  return c;
}

std::vector<double> Channel(const dsp::Waveform &wf, std::size_t c) {
  const auto s = wf.Channel(c);
  return {s.begin(), s.end()};
}

std::vector<json> JsonLines(const std::string &path) {
  std::vector<json> out;
  std::istringstream in(ReadText(path));
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

TEST(Config, DefaultsAndParsing) {
  const PipelineConfig d = ParsePipelineConfig("{}", "/base");
  EXPECT_EQ(d.command, Command::kRunAll);
  EXPECT_EQ(d.stft.window_length, 512u);
  EXPECT_EQ(d.stft.hop, 128u);
  EXPECT_EQ(d.separator.method, Method::kMvdr);
  EXPECT_EQ(d.separator.mask_oracle_kind, masks::MaskKind::kIrm);
  EXPECT_EQ(d.metric, metrics::Metric::kSiSdr);
  EXPECT_FALSE(d.ref_mic.has_value());
  EXPECT_EQ(d.jobs, 1u);

  const PipelineConfig c = ParsePipelineConfig(R"({
      "command": "evaluate", "scene_manifest": "m.json",
      "stft": {"window_length": 256, "hop": 64},
      "separator": {"mask_oracle_kind": "psm", "method": "masking"},
      "ref_mic": 3, "metric": {"name": "ci_sdr", "ci_sdr_taps": 16},
      "output_dir": "o", "seed": 7, "jobs": 2, "wav_format": "pcm16"})",
                                               "/base");
  EXPECT_EQ(c.command, Command::kEvaluate);
  EXPECT_EQ(c.scene_manifest, "/base/m.json");
  EXPECT_EQ(c.output_dir, "/base/o");
  EXPECT_EQ(c.stft.hop, 64u);
  EXPECT_EQ(c.separator.method, Method::kMasking);
  EXPECT_EQ(c.separator.mask_oracle_kind, masks::MaskKind::kPsm);
  EXPECT_EQ(c.ref_mic->one_based(), 3u);
  EXPECT_EQ(c.metric, metrics::Metric::kCiSdr);
  EXPECT_EQ(c.metric_config.ci_sdr_taps, 16u);
  EXPECT_EQ(*c.seed, 7u);
  EXPECT_EQ(c.jobs, 2u);
  EXPECT_EQ(c.wav_format, scene::SampleFormat::kPcm16);
}

TEST(Config, Errors) {
  EXPECT_THROW(ParsePipelineConfig("{", "."), ConfigError);
  EXPECT_THROW(ParsePipelineConfig(R"({"colour": 1})", "."), ConfigError);
  // Value checks run at command time.
  EXPECT_THROW(ParsePipelineConfig(R"({"stft": {"hop": 0}, "scene_manifest": "m"})", ".")
                   .Validate(),
               ConfigError);
  EXPECT_THROW(ParsePipelineConfig(R"({"separator": {"method": "gev"}})", "."), ConfigError);
  EXPECT_THROW(ParsePipelineConfig(R"({"command": "train"})", "."), ConfigError);
  EXPECT_THROW(ParsePipelineConfig(R"({"ref_mic": 0})", "."), ConfigError);
  EXPECT_THROW(ParsePipelineConfig(R"({"jobs": 0, "scene_manifest": "m"})", ".").Validate(),
               ConfigError);
  EXPECT_NO_THROW(ParsePipelineConfig(R"({"scene_manifest": "m"})", ".").Validate());
  EXPECT_THROW(ParsePipelineConfig(R"({"metric": {"name": "pesq"}})", "."), ConfigError);
  EXPECT_THROW(LoadPipelineConfig("/nonexistent/config.json"), ConfigError);
  PipelineConfig c;
  EXPECT_THROW(c.Validate(), ConfigError);  // run-all without a manifest
}

TEST(Config, EchoIgnoresOutputDirAndJobs) {
  PipelineConfig a, b;
  a.output_dir = "x";
  b.output_dir = "y";
  b.jobs = 4;
  EXPECT_EQ(ConfigEcho(a), ConfigEcho(b));
  b.seed = 3;
  EXPECT_NE(ConfigEcho(a), ConfigEcho(b));
}

TEST(Pipeline, NoiselessSingleSourceMixtureEqualsImage) {
  const std::string dir = TempDir("single");
  WriteText(dir + "/m.json", R"({
      "geometry": {"type": "circular", "num_mics": 3, "radius": 0.05},
      "scenes": [{"id": "solo", "sources": [{"synthetic": {"duration_s": 0.25},
                                             "azimuth_deg": 10}]}]})");
  PipelineConfig c;
  c.scene_manifest = dir + "/m.json";
  c.output_dir = dir + "/out";
  c.command = Command::kSimulate;
  EXPECT_EQ(CmdSimulate(c), (std::vector<std::string>{"solo"}));
  const auto mix = scene::ReadWav(SceneDir(c, "solo") + "/mixture.wav");
  const auto src = scene::ReadWav(SceneDir(c, "solo") + "/source_1.wav");
  const auto noise = scene::ReadWav(SceneDir(c, "solo") + "/noise.wav");
  EXPECT_EQ(mix.NumChannels(), 3u);
  for (std::size_t m = 0; m < 3; ++m) {
    EXPECT_EQ(Channel(mix, m), Channel(src, m));
    for (double v : Channel(noise, m)) EXPECT_EQ(v, 0.0);
  }
}

TEST(Pipeline, StoredScenesDecompose) {
  const std::string dir = TempDir("decompose");
  PipelineConfig c = SmallConfig(dir);
  for (auto fmt : {scene::SampleFormat::kFloat32, scene::SampleFormat::kPcm16}) {
    c.wav_format = fmt;
    const auto ids = CmdSimulate(c);
    EXPECT_EQ(ids, (std::vector<std::string>{"b", "a"}));
    for (const auto &id : ids) {
      const auto mix = scene::ReadWav(SceneDir(c, id) + "/mixture.wav");
      const auto s1 = scene::ReadWav(SceneDir(c, id) + "/source_1.wav");
      const auto s2 = scene::ReadWav(SceneDir(c, id) + "/source_2.wav");
      const auto n = scene::ReadWav(SceneDir(c, id) + "/noise.wav");
      for (std::size_t m = 0; m < mix.NumChannels(); ++m)
        for (std::size_t t = 0; t < mix.Length(); ++t) {
          float v = static_cast<float>(mix.Channel(m)[t]);
          v -= static_cast<float>(s1.Channel(m)[t]);
          v -= static_cast<float>(s2.Channel(m)[t]);
          v -= static_cast<float>(n.Channel(m)[t]);
          ASSERT_EQ(v, 0.0f);
        }
    }
  }
}

TEST(Pipeline, RunAllIsDeterministicAcrossDirsAndJobs) {
  const std::string d1 = TempDir("det1"), d2 = TempDir("det2");
  PipelineConfig c1 = SmallConfig(d1), c2 = SmallConfig(d1);
  c2.output_dir = d2 + "/out";
  c2.jobs = 2;
  const RunReport r1 = RunPipeline(c1);
  const RunReport r2 = RunPipeline(c2);
  EXPECT_EQ(ReportJsonl(r1), ReportJsonl(r2));
  EXPECT_EQ(ReadText(c1.output_dir + "/report.jsonl"), ReadText(c2.output_dir + "/report.jsonl"));
  EXPECT_EQ(ReadText(c1.output_dir + "/report.txt"), ReadText(c2.output_dir + "/report.txt"));
  ASSERT_EQ(r1.records.size(), 2u);
  EXPECT_EQ(r1.records[0].scene_id, "a");
  EXPECT_EQ(r1.records[1].scene_id, "b");
}

TEST(Pipeline, ReportAggregateMatchesRecords) {
  const std::string dir = TempDir("aggregate");
  const PipelineConfig c = SmallConfig(dir);
  RunPipeline(c);
  const auto lines = JsonLines(c.output_dir + "/report.jsonl");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines.front().at("type"), "header");
  EXPECT_EQ(lines.front().at("version"), kToolkitVersion);
  EXPECT_EQ(lines.back().at("type"), "aggregate");
  double in = 0.0, out = 0.0;
  std::size_t pairs = 0, improved = 0;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const json &r = lines[i];
    EXPECT_EQ(r.at("type"), "scene");
    for (std::size_t k = 0; k < r.at("input_db").size(); ++k) {
      const double a = r.at("input_db")[k], b = r.at("output_db")[k];
      EXPECT_NEAR(r.at("improvement_db")[k].get<double>(), b - a, 1e-12);
      in += a;
      out += b;
      improved += b > a;
      ++pairs;
    }
    EXPECT_EQ(r.at("flags").size(), 2u);
  }
  const json &agg = lines.back();
  EXPECT_EQ(agg.at("num_pairs"), pairs);
  EXPECT_EQ(agg.at("improved_pairs"), improved);
  EXPECT_NEAR(agg.at("mean_input_db").get<double>(), in / pairs, 1e-12);
  EXPECT_NEAR(agg.at("mean_output_db").get<double>(), out / pairs, 1e-12);
  EXPECT_NEAR(agg.at("mean_improvement_db").get<double>(), (out - in) / pairs, 1e-12);
  EXPECT_EQ(JsonLines(c.output_dir + "/timing.jsonl").size(), 2u);
}

void WriteReferenceEstimates(const PipelineConfig &c, const std::string &id, bool swap) {
  const std::string est = EstimateDir(c, id);
  fs::remove_all(est);
  fs::create_directories(est);
  for (int k = 1; k <= 2; ++k) {
    const int src = swap ? 3 - k : k;
    const auto s = scene::ReadWav(SceneDir(c, id) + "/source_" + std::to_string(src) + ".wav");
    scene::WriteWav(est + "/est_" + std::to_string(k) + ".wav",
                    dsp::Waveform::Mono(Channel(s, 0), s.SampleRate()));
  }
}

TEST(Pipeline, ReferenceEstimatesScoreAtCap) {
  const std::string dir = TempDir("cap");
  PipelineConfig c = SmallConfig(dir);
  CmdSimulate(c);
  WriteReferenceEstimates(c, "a", false);
  WriteReferenceEstimates(c, "b", true);
  const RunReport r = CmdEvaluate(c);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].assignment, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.records[1].assignment, (std::vector<std::size_t>{1, 0}));
  for (const auto &rec : r.records)
    for (double v : rec.output_db) EXPECT_EQ(v, 100.0);
  EXPECT_TRUE(r.records[0].flags.empty());
}

TEST(Pipeline, EstimateCountMismatch) {
  const std::string dir = TempDir("mismatch");
  PipelineConfig c = SmallConfig(dir);
  CmdSimulate(c);
  CmdSeparate(c);
  fs::remove(EstimateDir(c, "a") + "/est_2.wav");
  EXPECT_THROW(CmdEvaluate(c), InputError);
}

TEST(Pipeline, OracleMasksNeedImages) {
  const std::string dir = TempDir("noimages");
  PipelineConfig c = SmallConfig(dir);
  CmdSimulate(c);
  fs::remove(SceneDir(c, "b") + "/noise.wav");
  EXPECT_THROW(CmdSeparate(c), ConfigError);
}

TEST(Pipeline, ImportedMasksMatchLibrary) {
  const std::string dir = TempDir("import");
  PipelineConfig c = SmallConfig(dir);
  CmdSimulate(c);
  fs::create_directories(dir + "/masks");
  std::map<std::string, masks::MaskSet> sets;
  for (const std::string id : {"a", "b"}) {
    const auto mix = scene::ReadWav(SceneDir(c, id) + "/mixture.wav");
    std::vector<dsp::Spectrogram> images;
    for (const std::string name : {"source_1", "source_2", "noise"}) {
      const auto w = scene::ReadWav(SceneDir(c, id) + "/" + name + ".wav");
      images.push_back(dsp::Stft(dsp::Waveform::Mono(Channel(w, 0), w.SampleRate()), c.stft));
    }
    const auto z = dsp::Stft(dsp::Waveform::Mono(Channel(mix, 0), mix.SampleRate()), c.stft);
    // PSM differs from the default oracle, so the import path is exercised.
    sets[id] = masks::OracleMask(images, z, masks::MaskKind::kPsm);
    masks::WriteMaskSet(dir + "/masks/" + id + ".tfm", sets[id]);
  }
  c.separator.mask_import_path = dir + "/masks";
  CmdSeparate(c);
  for (const std::string id : {"a", "b"}) {
    const auto mix = scene::ReadWav(SceneDir(c, id) + "/mixture.wav");
    const beamform::MvdrSeparation lib = beamform::SeparateMvdr(
        mix, masks::ReadMaskSet(dir + "/masks/" + id + ".tfm", 2), c.stft,
        MicIndex::FromOneBased(1));
    for (std::size_t k = 0; k < 2; ++k) {
      const auto est = scene::ReadWav(EstimateDir(c, id) + "/est_" + std::to_string(k + 1) + ".wav");
      const auto expect = Channel(lib.output.streams[k], 0);
      const auto got = Channel(est, 0);
      ASSERT_EQ(got.size(), expect.size());
      for (std::size_t n = 0; n < got.size(); ++n)
        ASSERT_EQ(got[n], scene::Quantize(expect[n], scene::SampleFormat::kFloat32));
    }
  }
  fs::remove(dir + "/masks/b.tfm");
  EXPECT_THROW(CmdSeparate(c), InputError);
}

TEST(Pipeline, ParallelForRethrows) {
  std::vector<int> hit(20, 0);
  ParallelFor(20, 3, [&](std::size_t i) { hit[i] = 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(ParallelFor(10, 2,
                           [](std::size_t i) {
                             if (i == 7) throw InputError("boom");
                           }),
               InputError);
}

TEST(Cli, ExitCodes) {
  const std::string dir = TempDir("cli_codes");
  const PipelineConfig c = SmallConfig(dir);
  const std::string base = "--manifest " + c.scene_manifest + " --output-dir " + dir + "/out";
  EXPECT_EQ(RunCli("--bogus-flag"), 2);
  EXPECT_EQ(RunCli("--config /nonexistent.json"), 2);
  EXPECT_EQ(RunCli(base + " --ref-mic 9"), 2);
  EXPECT_EQ(RunCli(base + " --method gev"), 2);
  EXPECT_EQ(RunCli("--command evaluate --output-dir " + dir + "/empty"), 3);
  EXPECT_EQ(RunCli(base + " --command simulate"), 0);
  WriteText(SceneDir(c, "a") + "/mixture.wav", "RIFF junk");
  EXPECT_EQ(RunCli(base + " --command separate"), 3);
}

TEST(Cli, MatchesLibraryComposition) {
  const std::string dir = TempDir("cli_lib");
  PipelineConfig c = SmallConfig(dir);
  ASSERT_EQ(RunCli("--manifest " + c.scene_manifest + " --output-dir " + dir + "/cli"), 0);
  // The CLI uses the default 512/128 STFT.
  c.stft = dsp::StftConfig{};
  c.output_dir = dir + "/lib";
  RunPipeline(c);
  EXPECT_EQ(ReadText(dir + "/cli/report.jsonl"), ReadText(dir + "/lib/report.jsonl"));
  for (const std::string id : {"a", "b"})
    for (const std::string f : {"est_1.wav", "est_2.wav", "flags.json"})
      EXPECT_EQ(ReadText(dir + "/cli/estimates/" + id + "/" + f),
                ReadText(dir + "/lib/estimates/" + id + "/" + f));
}

TEST(Cli, FlagsOverrideConfigFile) {
  const std::string dir = TempDir("cli_override");
  SmallConfig(dir);
  WriteText(dir + "/cfg.json", R"({"command": "simulate", "scene_manifest": "manifest.json",
                                   "output_dir": "from_config", "seed": 1})");
  ASSERT_EQ(RunCli("--config " + dir + "/cfg.json --output-dir " + dir + "/from_flag"), 0);
  EXPECT_TRUE(fs::exists(dir + "/from_flag/scenes/a/mixture.wav"));
  EXPECT_FALSE(fs::exists(dir + "/from_config"));
  ASSERT_EQ(RunCli("--config " + dir + "/cfg.json --seed 2 --output-dir " + dir + "/seed2"), 0);
  EXPECT_NE(ReadText(dir + "/from_flag/scenes/a/mixture.wav"),
            ReadText(dir + "/seed2/scenes/a/mixture.wav"));
}

}  // namespace
}  // namespace mcsep::pipeline
