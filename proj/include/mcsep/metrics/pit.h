// include/mcsep/metrics/pit.h

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

#ifndef MCSEP_METRICS_PIT_H_
#define MCSEP_METRICS_PIT_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace mcsep::metrics {

// permutation[i] is the reference assigned to stream i.
struct Assignment {
  std::vector<std::size_t> permutation;
  double total_cost = 0.0;
};

// Minimum-cost bijection for a square cost matrix (rows = streams, columns =
// references). Ties resolve to the lexicographically smallest permutation.
// Exhaustive for K <= 6, shortest-augmenting-path assignment above.
Assignment PitAssign(const Eigen::MatrixXd &cost);

// Hungarian solver used above K = 6; exposed for testing.
Assignment SolveAssignment(const Eigen::MatrixXd &cost);

// Sum of cost(i, permutation[i]) accumulated in row order.
double PermutationCost(const Eigen::MatrixXd &cost,
                       const std::vector<std::size_t> &permutation);

}  // namespace mcsep::metrics

#endif  // MCSEP_METRICS_PIT_H_
