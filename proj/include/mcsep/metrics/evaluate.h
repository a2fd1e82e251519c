// include/mcsep/metrics/evaluate.h

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

#ifndef MCSEP_METRICS_EVALUATE_H_
#define MCSEP_METRICS_EVALUATE_H_

#include <vector>

#include <Eigen/Dense>

#include "mcsep/metrics/pit.h"
#include "mcsep/metrics/sdr.h"

namespace mcsep::metrics {

struct SeparationScores {
  // assignment.permutation[i] = reference matched to estimate i.
  Assignment assignment;
  // Indexed by reference speaker.
  std::vector<double> per_speaker_db;
  double mean_db = 0.0;
  // scores(i, j) = metric(estimate i, reference j).
  Eigen::MatrixXd score_matrix;
};

// Fills the K x K score matrix, minimises the negated dB with PitAssign and
// reports the aligned scores.
SeparationScores EvaluateSeparation(
    const std::vector<std::vector<double>> &estimates,
    const std::vector<std::vector<double>> &references, Metric metric,
    const MetricConfig &config = {});

}  // namespace mcsep::metrics

#endif  // MCSEP_METRICS_EVALUATE_H_
