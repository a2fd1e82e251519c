// src/metrics/pit.cc

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

#include "mcsep/metrics/pit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mcsep/common.h"

namespace mcsep::metrics {

namespace {

constexpr std::size_t kExhaustiveLimit = 6;

void CheckCost(const Eigen::MatrixXd &cost) {
  if (cost.rows() != cost.cols())
    throw InputError("cost matrix must be square, got " +
                     std::to_string(cost.rows()) + "x" +
                     std::to_string(cost.cols()));
  if (cost.rows() == 0) throw InputError("empty cost matrix");
  if (!cost.allFinite()) throw InputError("cost matrix has non-finite entries");
}

Assignment Exhaustive(const Eigen::MatrixXd &cost) {
  std::vector<std::size_t> perm(static_cast<std::size_t>(cost.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  Assignment best{perm, PermutationCost(cost, perm)};
  // next_permutation walks lexicographic order, so a strict comparison keeps
  // the smallest permutation among equal costs.
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double c = PermutationCost(cost, perm);
    if (c < best.total_cost) best = {perm, c};
  }
  return best;
}

// O(n^3) shortest augmenting path with potentials. Returns row -> column.
std::vector<std::size_t> Hungarian(const Eigen::MatrixXd &cost) {
  const std::size_t n = static_cast<std::size_t>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based work arrays; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(static_cast<Eigen::Index>(i0 - 1),
                                static_cast<Eigen::Index>(j - 1)) -
                           u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 1; j <= n; ++j) perm[match[j] - 1] = j - 1;
  return perm;
}

double Optimum(const Eigen::MatrixXd &cost) {
  if (cost.rows() == 0) return 0.0;
  return PermutationCost(cost, Hungarian(cost));
}

Eigen::MatrixXd Minor(const Eigen::MatrixXd &cost,
                      const std::vector<std::size_t> &rows,
                      const std::vector<std::size_t> &cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          cost(static_cast<Eigen::Index>(rows[a]),
               static_cast<Eigen::Index>(cols[b]));
  return out;
}

}  // namespace

double PermutationCost(const Eigen::MatrixXd &cost,
                       const std::vector<std::size_t> &permutation) {
  double total = 0.0;
  for (std::size_t i = 0; i < permutation.size(); ++i)
    total += cost(static_cast<Eigen::Index>(i),
                  static_cast<Eigen::Index>(permutation[i]));
  return total;
}

Assignment SolveAssignment(const Eigen::MatrixXd &cost) {
  CheckCost(cost);
  const std::size_t n = static_cast<std::size_t>(cost.rows());
  const double optimum = Optimum(cost);
  const double tol = 1e-12 * std::max(1.0, std::abs(optimum)) *
                     static_cast<double>(n);

  // Fix rows one at a time to the smallest column that still admits an
  // optimal completion; this yields the lexicographically smallest optimum.
  std::vector<std::size_t> perm(n);
  std::vector<std::size_t> free_cols(n);
  std::iota(free_cols.begin(), free_cols.end(), 0);
  double prefix = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rest_rows;
    for (std::size_t r = i + 1; r < n; ++r) rest_rows.push_back(r);
    std::size_t chosen = free_cols.size();
    double chosen_total = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      std::vector<std::size_t> rest_cols = free_cols;
      rest_cols.erase(rest_cols.begin() + static_cast<std::ptrdiff_t>(k));
      const double total =
          prefix +
          cost(static_cast<Eigen::Index>(i),
               static_cast<Eigen::Index>(free_cols[k])) +
          Optimum(Minor(cost, rest_rows, rest_cols));
      if (total <= optimum + tol) {
        chosen = k;
        break;
      }
      // Rounding can push every candidate past tol; keep the best seen.
      if (total < chosen_total) {
        chosen_total = total;
        chosen = k;
      }
    }
    const std::size_t c = free_cols[chosen];
    perm[i] = c;
    prefix += cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
    free_cols.erase(free_cols.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  return {perm, PermutationCost(cost, perm)};
}

Assignment PitAssign(const Eigen::MatrixXd &cost) {
  CheckCost(cost);
  if (static_cast<std::size_t>(cost.rows()) <= kExhaustiveLimit)
    return Exhaustive(cost);
  return SolveAssignment(cost);
}

}  // namespace mcsep::metrics
