// src/scene/manifest.cc

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

#include "mcsep/scene/manifest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mcsep/scene/synth.h"
#include "mcsep/scene/wav.h"

namespace mcsep::scene {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kDegToRad = std::numbers::pi / 180.0;

void CheckKeys(const json &obj, const std::set<std::string> &allowed,
               const std::string &where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto &item : obj.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

std::string Resolve(const std::string &base_dir, const std::string &path) {
  const fs::path p(path);
  return p.is_absolute() ? path : (fs::path(base_dir) / p).string();
}

ArrayGeometry ParseGeometry(const json &j) {
  CheckKeys(j, {"type", "num_mics", "radius", "spacing", "mic_positions",
                "speed_of_sound"},
            "geometry");
  ArrayGeometry g;
  const std::string type = j.value("type", j.contains("mic_positions") ? "explicit" : "");
  if (type == "circular") {
    g = ArrayGeometry::Circular(j.at("num_mics").get<std::size_t>(),
                                j.at("radius").get<double>());
  } else if (type == "linear") {
    g = ArrayGeometry::Linear(j.at("num_mics").get<std::size_t>(),
                              j.at("spacing").get<double>());
  } else if (type == "explicit") {
    for (const auto &p : j.at("mic_positions"))
      g.mic_positions.push_back(p.get<Point3>());
  } else {
    throw ConfigError("geometry.type must be circular, linear or explicit");
  }
  g.speed_of_sound = j.value("speed_of_sound", 343.0);
  g.Validate();
  return g;
}

NoiseSpec ParseNoise(const json &j, const std::string &base_dir) {
  CheckKeys(j, {"kind", "snr_db", "path"}, "noise");
  NoiseSpec n;
  const std::string kind = j.at("kind").get<std::string>();
  n.snr_db = j.at("snr_db").get<double>();
  if (kind == "white_gaussian") {
    n.kind = NoiseKind::kWhiteGaussian;
  } else if (kind == "file") {
    n.kind = NoiseKind::kFile;
    n.path = Resolve(base_dir, j.at("path").get<std::string>());
    n.recording = ReadWav(n.path);
  } else {
    throw ConfigError("noise.kind must be white_gaussian or file");
  }
  return n;
}

SourceSpec ParseSource(const json &j, const std::string &base_dir,
                       double sample_rate, std::uint64_t scene_seed,
                       std::size_t index) {
  CheckKeys(j, {"path", "synthetic", "azimuth_deg", "elevation_deg", "gain"},
            "source");
  SourceSpec s;
  if (j.contains("path") == j.contains("synthetic"))
    throw ConfigError("each source needs exactly one of 'path' or 'synthetic'");
  if (j.contains("path")) {
    s.origin = Resolve(base_dir, j.at("path").get<std::string>());
    s.dry = ReadWav(s.origin);
    if (s.dry.NumChannels() != 1)
      throw InputError(s.origin + ": dry sources must be mono");
  } else {
    const json &syn = j.at("synthetic");
    CheckKeys(syn, {"seed", "duration_s"}, "synthetic source");
    const std::uint64_t seed =
        syn.value("seed", MixSeed(scene_seed, index + 1));
    const double duration = syn.value("duration_s", 4.0);
    const auto length =
        static_cast<std::size_t>(std::llround(duration * sample_rate));
    s.dry = dsp::Waveform::Mono(SynthesizeSpeechLike(length, sample_rate, seed),
                                sample_rate);
    s.origin = "speech_like:" + std::to_string(seed);
  }
  s.azimuth = j.value("azimuth_deg", 0.0) * kDegToRad;
  s.elevation = j.value("elevation_deg", 0.0) * kDegToRad;
  s.gain = j.value("gain", 1.0);
  return s;
}

std::vector<SceneSpec> ParseImpl(const json &doc, const std::string &base_dir,
                                 std::optional<std::uint64_t> seed_override) {
  CheckKeys(doc, {"sample_rate", "seed", "reference_mic", "geometry", "scenes",
                  "suite"},
            "manifest");
  const double sample_rate = doc.value("sample_rate", 16000.0);
  const std::uint64_t seed =
      seed_override ? *seed_override : doc.value("seed", std::uint64_t{0});
  const MicIndex ref = MicIndex::FromOneBased(doc.value("reference_mic", 1LL));
  const ArrayGeometry geometry = doc.contains("geometry")
                                     ? ParseGeometry(doc.at("geometry"))
                                     : ArrayGeometry::Circular(8, 0.05);
  ref.CheckWithin(geometry.NumMics());

  std::vector<SceneSpec> scenes;
  if (doc.contains("scenes")) {
    std::size_t index = 0;
    for (const json &js : doc.at("scenes")) {
      CheckKeys(js, {"id", "seed", "sources", "noise"}, "scene");
      SceneSpec spec;
      spec.id = js.value("id", "scene" + std::to_string(index));
      spec.seed = js.value("seed", MixSeed(seed, index));
      spec.geometry = geometry;
      spec.reference_mic = ref;
      std::size_t k = 0;
      for (const json &src : js.at("sources"))
        spec.sources.push_back(ParseSource(src, base_dir, sample_rate, spec.seed, k++));
      if (js.contains("noise")) spec.noise = ParseNoise(js.at("noise"), base_dir);
      spec.Validate();
      scenes.push_back(std::move(spec));
      ++index;
    }
  }
  if (doc.contains("suite")) {
    const json &js = doc.at("suite");
    CheckKeys(js, {"num_scenes", "num_sources", "duration_s",
                   "min_separation_deg", "snr_db"},
              "suite");
    SuiteConfig suite;
    suite.num_scenes = js.value("num_scenes", suite.num_scenes);
    suite.num_sources = js.value("num_sources", suite.num_sources);
    suite.duration_s = js.value("duration_s", suite.duration_s);
    suite.min_separation_deg = js.value("min_separation_deg", suite.min_separation_deg);
    suite.snr_db = js.contains("snr_db") && !js.at("snr_db").is_null()
                       ? std::optional<double>(js.at("snr_db").get<double>())
                       : std::nullopt;
    suite.sample_rate = sample_rate;
    suite.geometry = geometry;
    suite.reference_mic = ref;
    suite.seed = seed;
    for (SceneSpec &spec : MakeSuite(suite)) scenes.push_back(std::move(spec));
  }
  if (scenes.empty()) throw ConfigError("manifest defines no scenes");
  std::set<std::string> ids;
  for (const auto &s : scenes)
    if (!ids.insert(s.id).second)
      throw ConfigError("duplicate scene id '" + s.id + "'");
  return scenes;
}

}  // namespace

std::vector<SceneSpec> ParseManifest(const std::string &text,
                                     const std::string &base_dir,
                                     std::optional<std::uint64_t> seed_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  try {
    return ParseImpl(doc, base_dir, seed_override);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("manifest schema error: ") + e.what());
  }
}

std::vector<SceneSpec> LoadManifest(const std::string &path,
                                    std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scene manifest " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const fs::path parent = fs::path(path).parent_path();
  return ParseManifest(ss.str(), parent.empty() ? "." : parent.string(),
                       seed_override);
}

std::string SceneEcho(const SceneSpec &spec, const SceneOutput &output) {
  json j;
  j["id"] = spec.id;
  j["seed"] = spec.seed;
  j["sample_rate"] = output.resolved.sample_rate;
  j["length"] = output.resolved.length;
  j["num_sources"] = spec.sources.size();
  j["reference_mic"] = spec.reference_mic.one_based();
  j["geometry"] = {{"mic_positions", spec.geometry.mic_positions},
                   {"speed_of_sound", spec.geometry.speed_of_sound}};
  json sources = json::array();
  for (std::size_t k = 0; k < spec.sources.size(); ++k) {
    const SourceSpec &s = spec.sources[k];
    sources.push_back({{"origin", s.origin},
                       {"azimuth_deg", s.azimuth / kDegToRad},
                       {"elevation_deg", s.elevation / kDegToRad},
                       {"gain", s.gain},
                       {"delays_samples", output.resolved.delays_samples[k]}});
  }
  j["sources"] = sources;
  if (spec.noise) {
    j["noise"] = {{"kind", spec.noise->kind == NoiseKind::kWhiteGaussian
                               ? "white_gaussian"
                               : "file"},
                  {"snr_db", spec.noise->snr_db},
                  {"scale", output.resolved.noise_scale}};
    if (!spec.noise->path.empty()) j["noise"]["path"] = spec.noise->path;
    if (output.resolved.achieved_snr_db)
      j["noise"]["achieved_snr_db"] = *output.resolved.achieved_snr_db;
  } else {
    j["noise"] = nullptr;
  }
  return j.dump(2) + "\n";
}

}  // namespace mcsep::scene
