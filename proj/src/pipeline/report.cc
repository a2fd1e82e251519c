// src/pipeline/report.cc

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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mcsep/pipeline/commands.h"

namespace mcsep::pipeline {

namespace {

using nlohmann::json;

std::vector<std::size_t> OneBased(const std::vector<std::size_t> &v) {
  std::vector<std::size_t> out;
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

double Mean(const std::vector<double> &v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

void Write(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

std::string Format(const char *fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

Aggregate ComputeAggregate(const std::vector<SceneRecord> &records) {
  Aggregate a;
  a.num_scenes = records.size();
  double in = 0.0, out = 0.0, gain = 0.0;
  for (const SceneRecord &r : records) {
    if (r.input_db.size() != r.output_db.size())
      throw InputError(r.scene_id + ": input and output score counts differ");
    for (std::size_t j = 0; j < r.output_db.size(); ++j) {
      in += r.input_db[j];
      out += r.output_db[j];
      gain += r.output_db[j] - r.input_db[j];
      a.improved_pairs += r.output_db[j] > r.input_db[j] ? 1 : 0;
      ++a.num_pairs;
    }
  }
  if (a.num_pairs > 0) {
    const double n = static_cast<double>(a.num_pairs);
    a.mean_input_db = in / n;
    a.mean_output_db = out / n;
    a.mean_improvement_db = gain / n;
  }
  return a;
}

std::string ReportJsonl(const RunReport &report) {
  std::ostringstream os;
  json header = {{"type", "header"},
                 {"version", report.version},
                 {"metric", report.metric},
                 {"config", report.config_echo.empty()
                                ? json(nullptr)
                                : json::parse(report.config_echo)}};
  os << header.dump() << "\n";
  for (const SceneRecord &r : report.records) {
    std::vector<double> gain;
    for (std::size_t j = 0; j < r.output_db.size(); ++j)
      gain.push_back(r.output_db[j] - r.input_db[j]);
    json flags = json::array();
    for (const SpeakerFlags &f : r.flags)
      flags.push_back({{"loaded", f.loaded.size()}, {"passthrough", f.passthrough}});
    json rec = {{"type", "scene"},
                {"scene_id", r.scene_id},
                {"metric", report.metric},
                {"input_db", r.input_db},
                {"output_db", r.output_db},
                {"improvement_db", gain},
                {"mean_output_db", Mean(r.output_db)},
                {"assignment", OneBased(r.assignment)},
                {"flags", flags}};
    os << rec.dump() << "\n";
  }
  const Aggregate &a = report.aggregate;
  json agg = {{"type", "aggregate"},
              {"num_scenes", a.num_scenes},
              {"num_pairs", a.num_pairs},
              {"mean_input_db", a.mean_input_db},
              {"mean_output_db", a.mean_output_db},
              {"mean_improvement_db", a.mean_improvement_db},
              {"improved_pairs", a.improved_pairs}};
  os << agg.dump() << "\n";
  return os.str();
}

std::string TimingJsonl(const RunReport &report) {
  std::ostringstream os;
  for (const SceneRecord &r : report.records)
    os << json({{"scene_id", r.scene_id}, {"seconds", r.seconds}}).dump() << "\n";
  return os.str();
}

std::string ReportTable(const RunReport &report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %-4s %10s %10s %10s %s\n", "scene", "spk",
                "input_dB", "output_dB", "gain_dB", "est");
  os << "metric: " << report.metric << "\n" << line;
  for (const SceneRecord &r : report.records) {
    for (std::size_t j = 0; j < r.output_db.size(); ++j) {
      std::size_t est = 0;
      for (std::size_t i = 0; i < r.assignment.size(); ++i)
        if (r.assignment[i] == j) est = i + 1;
      std::snprintf(line, sizeof line, "%-16s %-4zu %10.3f %10.3f %10.3f %zu\n",
                    r.scene_id.c_str(), j + 1, r.input_db[j], r.output_db[j],
                    r.output_db[j] - r.input_db[j], est);
      os << line;
    }
  }
  const Aggregate &a = report.aggregate;
  os << "scenes " << a.num_scenes << ", pairs " << a.num_pairs << ", improved "
     << a.improved_pairs << "\n"
     << "mean input " << Format("%.3f", a.mean_input_db) << " dB, mean output "
     << Format("%.3f", a.mean_output_db) << " dB, mean gain "
     << Format("%.3f", a.mean_improvement_db) << " dB\n";
  return os.str();
}

void WriteReport(const PipelineConfig &config, const RunReport &report) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw InputError("cannot create directory " + config.output_dir);
  const std::filesystem::path dir(config.output_dir);
  Write((dir / "report.jsonl").string(), ReportJsonl(report));
  Write((dir / "report.txt").string(), ReportTable(report));
  Write((dir / "timing.jsonl").string(), TimingJsonl(report));
}

}  // namespace mcsep::pipeline
