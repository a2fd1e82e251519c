// tools/mcsep.cc

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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mcsep/pipeline/commands.h"
#include "mcsep/pipeline/config.h"

namespace {

using namespace mcsep;

int Main(int argc, char **argv) {
  CLI::App app{"mcsep: multi-channel separation front-end (simulate, separate, evaluate)"};
  std::string config_path, command, output_dir, manifest, method, oracle_kind,
      mask_import, metric, wav_format;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs, taps;
  std::optional<long long> ref_mic;
  app.add_option("--config", config_path, "JSON pipeline config")->check(CLI::ExistingFile);
  app.add_option("--command", command, "simulate | separate | evaluate | run-all");
  app.add_option("--seed", seed, "overrides the manifest seed");
  app.add_option("--output-dir", output_dir, "output root");
  app.add_option("--jobs", jobs, "scenes processed concurrently");
  app.add_option("--manifest", manifest, "scene manifest");
  app.add_option("--method", method, "masking | mvdr");
  app.add_option("--mask", oracle_kind, "oracle mask kind: ibm | irm | psm");
  app.add_option("--mask-import", mask_import, "directory of <scene id>.tfm masks");
  app.add_option("--ref-mic", ref_mic, "reference microphone, 1-based");
  app.add_option("--metric", metric, "si_sdr | ci_sdr");
  app.add_option("--ci-sdr-taps", taps, "CI-SDR filter length");
  app.add_option("--wav-format", wav_format, "float32 | pcm16");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  pipeline::PipelineConfig config;
  if (!config_path.empty()) config = pipeline::LoadPipelineConfig(config_path);
  if (!command.empty()) config.command = pipeline::ParseCommand(command);
  if (seed) config.seed = *seed;
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (jobs) config.jobs = *jobs;
  if (!manifest.empty()) config.scene_manifest = manifest;
  if (!method.empty()) config.separator.method = pipeline::ParseMethod(method);
  if (!oracle_kind.empty()) {
    config.separator.mask_oracle_kind = masks::ParseMaskKind(oracle_kind);
    config.separator.mask_import_path.clear();
  }
  if (!mask_import.empty()) config.separator.mask_import_path = mask_import;
  if (ref_mic) config.ref_mic = MicIndex::FromOneBased(*ref_mic);
  if (!metric.empty()) config.metric = metrics::ParseMetric(metric);
  if (taps) config.metric_config.ci_sdr_taps = *taps;
  if (!wav_format.empty()) config.wav_format = scene::ParseSampleFormat(wav_format);
  config.Validate();

  const pipeline::RunReport report = pipeline::RunPipeline(config);
  if (config.command == pipeline::Command::kEvaluate ||
      config.command == pipeline::Command::kRunAll)
    std::cout << pipeline::ReportTable(report);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return Main(argc, argv);
  } catch (const mcsep::ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const mcsep::InputError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const mcsep::NumericalError &e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  }
}
