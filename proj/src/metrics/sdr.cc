// src/metrics/sdr.cc

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

#include "mcsep/metrics/sdr.h"

#include <algorithm>
#include <cmath>

#include "mcsep/common.h"

namespace mcsep::metrics {

namespace {

double Energy(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) acc += a[n] * b[n];
  return acc;
}

double RatioDb(double signal, double distortion, double cap) {
  if (!(signal > 0.0)) return -cap;
  if (!(distortion > 0.0)) return cap;
  return std::clamp(10.0 * std::log10(signal / distortion), -cap, cap);
}

void CheckPair(std::span<const double> estimate,
               std::span<const double> reference) {
  if (estimate.size() != reference.size())
    throw InputError("estimate and reference lengths differ (" +
                     std::to_string(estimate.size()) + " vs " +
                     std::to_string(reference.size()) + ")");
  if (reference.empty()) throw InputError("empty reference signal");
}

}  // namespace

void MetricConfig::Validate() const {
  if (ci_sdr_taps < 1) throw ConfigError("ci_sdr_taps must be >= 1");
  if (!std::isfinite(cap_db) || cap_db <= 0.0)
    throw ConfigError("cap_db must be finite and positive");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
}

Metric ParseMetric(const std::string &name) {
  if (name == "si_sdr") return Metric::kSiSdr;
  if (name == "ci_sdr") return Metric::kCiSdr;
  throw ConfigError("unknown metric '" + name + "'");
}

std::string MetricName(Metric metric) {
  return metric == Metric::kSiSdr ? "si_sdr" : "ci_sdr";
}

double SiSdr(std::span<const double> estimate, std::span<const double> reference,
             const MetricConfig &config) {
  config.Validate();
  CheckPair(estimate, reference);
  const double ref_energy = Energy(reference);
  if (!(ref_energy > 0.0)) throw InputError("reference signal is all zero");
  const double alpha = Dot(estimate, reference) / ref_energy;
  double target = 0.0, distortion = 0.0;
  for (std::size_t n = 0; n < reference.size(); ++n) {
    const double s = alpha * reference[n];
    const double e = s - estimate[n];
    target += s * s;
    distortion += e * e;
  }
  return RatioDb(target, distortion, config.cap_db);
}

CiSdrFitter::CiSdrFitter(std::span<const double> reference,
                         const MetricConfig &config)
    : reference_(reference.begin(), reference.end()),
      config_(config),
      taps_(config.ci_sdr_taps) {
  config_.Validate();
  const std::size_t length = reference_.size();
  if (length < taps_)
    throw InputError("signal length " + std::to_string(length) +
                     " is shorter than the " + std::to_string(taps_) +
                     "-tap CI-SDR filter");
  if (!(Energy(reference_) > 0.0))
    throw InputError("reference signal is all zero");

  // Truncated autocorrelation gives the first row; every further row drops
  // one more tail product: G[i][j] = G[i-1][j-1] - s[L-i] s[L-j].
  gram_.resize(static_cast<Eigen::Index>(taps_),
               static_cast<Eigen::Index>(taps_));
  const double *s = reference_.data();
  for (std::size_t j = 0; j < taps_; ++j) {
    double acc = 0.0;
    for (std::size_t n = j; n < length; ++n) acc += s[n] * s[n - j];
    gram_(0, static_cast<Eigen::Index>(j)) = acc;
  }
  for (std::size_t i = 1; i < taps_; ++i) {
    for (std::size_t j = i; j < taps_; ++j) {
      gram_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          gram_(static_cast<Eigen::Index>(i - 1),
                static_cast<Eigen::Index>(j - 1)) -
          s[length - i] * s[length - j];
    }
  }
  for (std::size_t i = 0; i < taps_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      gram_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          gram_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));

  Eigen::MatrixXd regularised = gram_;
  regularised.diagonal().array() += config_.eps;
  solver_.compute(regularised);
  if (solver_.info() != Eigen::Success)
    throw NumericalError("CI-SDR normal equations could not be factorised");
}

Eigen::VectorXd CiSdrFitter::Filter(std::span<const double> estimate) const {
  CheckPair(estimate, reference_);
  const std::size_t length = reference_.size();
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(taps_));
  for (std::size_t i = 0; i < taps_; ++i) {
    double acc = 0.0;
    for (std::size_t n = i; n < length; ++n)
      acc += estimate[n] * reference_[n - i];
    rhs(static_cast<Eigen::Index>(i)) = acc;
  }
  return solver_.solve(rhs);
}

double CiSdrFitter::Score(std::span<const double> estimate) const {
  const Eigen::VectorXd h = Filter(estimate);
  if (!h.allFinite()) throw NumericalError("CI-SDR filter is not finite");
  const std::size_t length = reference_.size();
  double target = 0.0, distortion = 0.0;
  for (std::size_t n = 0; n < length; ++n) {
    const std::size_t jmax = std::min(n + 1, taps_);
    double y = 0.0;
    for (std::size_t j = 0; j < jmax; ++j)
      y += h(static_cast<Eigen::Index>(j)) * reference_[n - j];
    const double e = estimate[n] - y;
    target += y * y;
    distortion += e * e;
  }
  return RatioDb(target, distortion, config_.cap_db);
}

double CiSdr(std::span<const double> estimate, std::span<const double> reference,
             const MetricConfig &config) {
  CheckPair(estimate, reference);
  return CiSdrFitter(reference, config).Score(estimate);
}

double Score(Metric metric, std::span<const double> estimate,
             std::span<const double> reference, const MetricConfig &config) {
  return metric == Metric::kSiSdr ? SiSdr(estimate, reference, config)
                                  : CiSdr(estimate, reference, config);
}

}  // namespace mcsep::metrics
