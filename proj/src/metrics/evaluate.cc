// src/metrics/evaluate.cc

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

#include "mcsep/metrics/evaluate.h"

#include <optional>
#include <string>

#include "mcsep/common.h"

namespace mcsep::metrics {

SeparationScores EvaluateSeparation(
    const std::vector<std::vector<double>> &estimates,
    const std::vector<std::vector<double>> &references, Metric metric,
    const MetricConfig &config) {
  config.Validate();
  const std::size_t k = references.size();
  if (estimates.size() != k)
    throw InputError("got " + std::to_string(estimates.size()) +
                     " estimates for " + std::to_string(k) + " references");
  if (k == 0) throw InputError("no references to evaluate against");

  const auto dim = static_cast<Eigen::Index>(k);
  SeparationScores out;
  out.score_matrix.resize(dim, dim);
  for (std::size_t j = 0; j < k; ++j) {
    std::optional<CiSdrFitter> fitter;
    if (metric == Metric::kCiSdr) fitter.emplace(references[j], config);
    for (std::size_t i = 0; i < k; ++i) {
      out.score_matrix(static_cast<Eigen::Index>(i),
                       static_cast<Eigen::Index>(j)) =
          fitter ? fitter->Score(estimates[i])
                 : SiSdr(estimates[i], references[j], config);
    }
  }

  out.assignment = PitAssign(-out.score_matrix);
  out.per_speaker_db.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = out.assignment.permutation[i];
    out.per_speaker_db[j] = out.score_matrix(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(j));
  }
  double sum = 0.0;
  for (double v : out.per_speaker_db) sum += v;
  out.mean_db = sum / static_cast<double>(k);
  return out;
}

}  // namespace mcsep::metrics
