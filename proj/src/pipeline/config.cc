// src/pipeline/config.cc

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

#include "mcsep/pipeline/config.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mcsep::pipeline {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void CheckKeys(const json &obj, const std::set<std::string> &allowed,
               const std::string &where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto &item : obj.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

std::string Resolve(const std::string &base_dir, const std::string &path) {
  if (path.empty()) return path;
  const fs::path p(path);
  return p.is_absolute() ? path : (fs::path(base_dir) / p).string();
}

template <typename T>
T Get(const json &obj, const char *key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::size_t GetCount(const json &obj, const char *key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json &v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

Command ParseCommand(const std::string &name) {
  if (name == "simulate") return Command::kSimulate;
  if (name == "separate") return Command::kSeparate;
  if (name == "evaluate") return Command::kEvaluate;
  if (name == "run-all") return Command::kRunAll;
  throw ConfigError("unknown command '" + name +
                    "' (expected simulate, separate, evaluate or run-all)");
}

std::string CommandName(Command command) {
  switch (command) {
    case Command::kSimulate: return "simulate";
    case Command::kSeparate: return "separate";
    case Command::kEvaluate: return "evaluate";
    case Command::kRunAll: return "run-all";
  }
  return "?";
}

Method ParseMethod(const std::string &name) {
  if (name == "masking") return Method::kMasking;
  if (name == "mvdr") return Method::kMvdr;
  throw ConfigError("unknown separation method '" + name +
                    "' (expected masking or mvdr)");
}

std::string MethodName(Method method) {
  return method == Method::kMasking ? "masking" : "mvdr";
}

void PipelineConfig::Validate() const {
  stft.Validate();
  metric_config.Validate();
  if (jobs == 0) throw ConfigError("jobs must be at least 1");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (!(separator.mvdr.diagonal_loading >= 0.0))
    throw ConfigError("diagonal_loading must be non-negative");
  if ((command == Command::kSimulate || command == Command::kRunAll) &&
      scene_manifest.empty())
    throw ConfigError(CommandName(command) + " needs a scene_manifest");
}

PipelineConfig ParsePipelineConfig(const std::string &text,
                                   const std::string &base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  CheckKeys(doc, {"command", "scene_manifest", "stft", "separator", "ref_mic",
                  "metric", "output_dir", "seed", "jobs", "wav_format"},
            "config");
  PipelineConfig c;
  if (doc.contains("command")) c.command = ParseCommand(Get<std::string>(doc, "command", ""));
  c.scene_manifest = Resolve(base_dir, Get<std::string>(doc, "scene_manifest", ""));
  if (doc.contains("stft")) {
    const json &js = doc.at("stft");
    CheckKeys(js, {"window_length", "hop", "fft_size", "window", "center"}, "stft");
    c.stft.window_length = GetCount(js, "window_length", c.stft.window_length);
    c.stft.hop = GetCount(js, "hop", c.stft.hop);
    c.stft.fft_size = GetCount(js, "fft_size", c.stft.window_length);
    if (js.contains("window"))
      c.stft.window_kind = dsp::ParseWindowKind(Get<std::string>(js, "window", ""));
    c.stft.center_padding = Get<bool>(js, "center", c.stft.center_padding);
  }
  if (doc.contains("separator")) {
    const json &js = doc.at("separator");
    CheckKeys(js, {"mask_oracle_kind", "mask_import_path", "method",
                   "diagonal_loading"},
              "separator");
    if (js.contains("mask_oracle_kind") && js.contains("mask_import_path"))
      throw ConfigError("separator takes mask_oracle_kind or mask_import_path, not both");
    if (js.contains("mask_oracle_kind"))
      c.separator.mask_oracle_kind =
          masks::ParseMaskKind(Get<std::string>(js, "mask_oracle_kind", ""));
    c.separator.mask_import_path =
        Resolve(base_dir, Get<std::string>(js, "mask_import_path", ""));
    if (js.contains("method"))
      c.separator.method = ParseMethod(Get<std::string>(js, "method", ""));
    c.separator.mvdr.diagonal_loading =
        Get<double>(js, "diagonal_loading", c.separator.mvdr.diagonal_loading);
  }
  if (doc.contains("ref_mic"))
    c.ref_mic = MicIndex::FromOneBased(Get<long long>(doc, "ref_mic", 1));
  if (doc.contains("metric")) {
    const json &js = doc.at("metric");
    CheckKeys(js, {"name", "ci_sdr_taps", "cap_db", "eps"}, "metric");
    if (js.contains("name")) c.metric = metrics::ParseMetric(Get<std::string>(js, "name", ""));
    c.metric_config.ci_sdr_taps = GetCount(js, "ci_sdr_taps", c.metric_config.ci_sdr_taps);
    c.metric_config.cap_db = Get<double>(js, "cap_db", c.metric_config.cap_db);
    c.metric_config.eps = Get<double>(js, "eps", c.metric_config.eps);
  }
  if (doc.contains("output_dir"))
    c.output_dir = Resolve(base_dir, Get<std::string>(doc, "output_dir", ""));
  if (doc.contains("seed")) c.seed = Get<std::uint64_t>(doc, "seed", 0);
  c.jobs = GetCount(doc, "jobs", c.jobs);
  if (doc.contains("wav_format"))
    c.wav_format = scene::ParseSampleFormat(Get<std::string>(doc, "wav_format", ""));
  return c;
}

PipelineConfig LoadPipelineConfig(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const fs::path parent = fs::path(path).parent_path();
  return ParsePipelineConfig(ss.str(), parent.empty() ? "." : parent.string());
}

std::string ConfigEcho(const PipelineConfig &config) {
  json j;
  j["command"] = CommandName(config.command);
  j["scene_manifest"] = config.scene_manifest;
  j["stft"] = {{"window_length", config.stft.window_length},
               {"hop", config.stft.hop},
               {"fft_size", config.stft.fft_size},
               {"window", dsp::WindowKindName(config.stft.window_kind)},
               {"center", config.stft.center_padding}};
  json sep;
  if (config.separator.mask_import_path.empty())
    sep["mask_oracle_kind"] = masks::MaskKindName(config.separator.mask_oracle_kind);
  else
    sep["mask_import_path"] = config.separator.mask_import_path;
  sep["method"] = MethodName(config.separator.method);
  sep["diagonal_loading"] = config.separator.mvdr.diagonal_loading;
  j["separator"] = sep;
  j["ref_mic"] = config.ref_mic ? json(config.ref_mic->one_based()) : json(nullptr);
  j["metric"] = {{"name", metrics::MetricName(config.metric)},
                 {"ci_sdr_taps", config.metric_config.ci_sdr_taps},
                 {"cap_db", config.metric_config.cap_db},
                 {"eps", config.metric_config.eps}};
  j["seed"] = config.seed ? json(*config.seed) : json(nullptr);
  j["wav_format"] = scene::SampleFormatName(config.wav_format);
  return j.dump();
}

}  // namespace mcsep::pipeline
