// include/mcsep/metrics/sdr.h

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

#ifndef MCSEP_METRICS_SDR_H_
#define MCSEP_METRICS_SDR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mcsep::metrics {

struct MetricConfig {
  std::size_t ci_sdr_taps = 512;
  // Scores are clamped to [-cap_db, cap_db].
  double cap_db = 100.0;
  // Ridge added to the CI-SDR normal equations.
  double eps = 1e-12;

  void Validate() const;
};

enum class Metric { kSiSdr, kCiSdr };

Metric ParseMetric(const std::string &name);
std::string MetricName(Metric metric);

// 10 log10(|a s|^2 / |a s - e|^2) with a = <e, s> / |s|^2.
double SiSdr(std::span<const double> estimate, std::span<const double> reference,
             const MetricConfig &config = {});

// Convolutive-transfer-function invariant SDR. The reference is passed
// through the causal FIR h (ci_sdr_taps taps) minimising
// sum_{n < L} (e[n] - (h * s)[n])^2, and the score is
// 10 log10(|h * s|^2 / |e - h * s|^2).
double CiSdr(std::span<const double> estimate, std::span<const double> reference,
             const MetricConfig &config = {});

// Negative CI-SDR, the training-loss form.
inline double CiSdrLoss(std::span<const double> estimate,
                        std::span<const double> reference,
                        const MetricConfig &config = {}) {
  return -CiSdr(estimate, reference, config);
}

// Factorises the normal equations of one reference once so that several
// estimates can be scored against it.
class CiSdrFitter {
 public:
  CiSdrFitter(std::span<const double> reference, const MetricConfig &config);

  double Score(std::span<const double> estimate) const;
  // Least-squares filter for `estimate`.
  Eigen::VectorXd Filter(std::span<const double> estimate) const;

  // Gram matrix G[i][j] = sum_{n=max(i,j)}^{L-1} s[n-i] s[n-j], without ridge.
  const Eigen::MatrixXd &Gram() const { return gram_; }

 private:
  std::vector<double> reference_;
  MetricConfig config_;
  std::size_t taps_;
  Eigen::MatrixXd gram_;
  Eigen::LDLT<Eigen::MatrixXd> solver_;
};

double Score(Metric metric, std::span<const double> estimate,
             std::span<const double> reference, const MetricConfig &config);

}  // namespace mcsep::metrics

#endif  // MCSEP_METRICS_SDR_H_
