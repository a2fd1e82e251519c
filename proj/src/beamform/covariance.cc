// src/beamform/covariance.cc

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

#include <cmath>
#include <string>

#include "mcsep/beamform/beamform.h"

namespace mcsep::beamform {

namespace {

// Per-frequency M x T snapshot matrices.
std::vector<CMatrix> GatherSnapshots(const dsp::Spectrogram &spec) {
  const auto m = static_cast<Eigen::Index>(spec.NumChannels());
  const auto frames = static_cast<Eigen::Index>(spec.NumFrames());
  std::vector<CMatrix> out(spec.NumFrequencies(), CMatrix(m, frames));
  for (Eigen::Index c = 0; c < m; ++c)
    for (Eigen::Index t = 0; t < frames; ++t) {
      auto frame = spec.Frame(static_cast<std::size_t>(c), static_cast<std::size_t>(t));
      for (std::size_t f = 0; f < frame.size(); ++f) out[f](c, t) = frame[f];
    }
  return out;
}

void CheckMask(const dsp::Spectrogram &spec, std::span<const double> mask) {
  if (mask.size() != spec.NumFrames() * spec.NumFrequencies())
    throw InputError("mask size " + std::to_string(mask.size()) +
                     " does not match frames x frequencies of the spectrogram");
  for (double g : mask)
    if (!std::isfinite(g) || g < 0.0)
      throw InputError("covariance masks must be finite and non-negative");
}

SpatialCovarianceSet Estimate(const std::vector<CMatrix> &snapshots,
                              std::size_t num_freqs, std::size_t num_channels,
                              std::span<const double> mask) {
  const auto m = static_cast<Eigen::Index>(num_channels);
  SpatialCovarianceSet out;
  out.num_channels = num_channels;
  out.matrices.assign(num_freqs, CMatrix::Zero(m, m));
  out.mass.assign(num_freqs, 0.0);
  out.zero_mass.assign(num_freqs, false);
  for (std::size_t f = 0; f < num_freqs; ++f) {
    const CMatrix &z = snapshots[f];
    const Eigen::Index frames = z.cols();
    Eigen::VectorXd g(frames);
    double mass = 0.0;
    for (Eigen::Index t = 0; t < frames; ++t) {
      g(t) = mask[static_cast<std::size_t>(t) * num_freqs + f];
      mass += g(t);
    }
    out.mass[f] = mass;
    if (!(mass > 0.0)) {
      out.zero_mass[f] = true;
      continue;
    }
    const CMatrix weighted = z * g.asDiagonal();
    const CMatrix sum = weighted * z.adjoint();
    CMatrix &v = out.matrices[f];
    for (Eigen::Index i = 0; i < m; ++i) {
      v(i, i) = Complex(sum(i, i).real() / mass, 0.0);
      for (Eigen::Index j = i + 1; j < m; ++j) {
        v(i, j) = sum(i, j) / mass;
        v(j, i) = std::conj(v(i, j));
      }
    }
  }
  return out;
}

}  // namespace

void SpatialCovarianceSet::CheckHermitian(double tolerance) const {
  for (std::size_t f = 0; f < matrices.size(); ++f) {
    const CMatrix &v = matrices[f];
    if (v.rows() != static_cast<Eigen::Index>(num_channels) || v.cols() != v.rows())
      throw InputError("covariance matrix at frequency " + std::to_string(f) +
                       " has the wrong shape");
    if (!v.allFinite())
      throw InputError("covariance matrix at frequency " + std::to_string(f) +
                       " is not finite");
    const double scale = v.cwiseAbs().maxCoeff();
    const double asym = (v - v.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tolerance * scale)
      throw InputError("covariance matrix at frequency " + std::to_string(f) +
                       " is not Hermitian");
  }
}

SpatialCovarianceSet SpatialCovariance(const dsp::Spectrogram &spec,
                                       std::span<const double> mask) {
  CheckMask(spec, mask);
  return Estimate(GatherSnapshots(spec), spec.NumFrequencies(),
                  spec.NumChannels(), mask);
}

std::vector<SpatialCovarianceSet> StreamCovariances(const dsp::Spectrogram &spec,
                                                    const masks::MaskSet &masks) {
  masks.CheckShape(spec);
  const std::vector<CMatrix> snapshots = GatherSnapshots(spec);
  std::vector<SpatialCovarianceSet> out;
  for (std::size_t s = 0; s < masks.NumStreams(); ++s) {
    CheckMask(spec, masks.Stream(s));
    out.push_back(Estimate(snapshots, spec.NumFrequencies(), spec.NumChannels(),
                           masks.Stream(s)));
  }
  return out;
}

SpatialCovarianceSet InterferenceCovariance(
    std::span<const SpatialCovarianceSet> streams, std::size_t target) {
  if (streams.size() < 2)
    throw ConfigError("interference covariance needs at least one non-target "
                      "stream (another speaker or noise)");
  if (target >= streams.size())
    throw ConfigError("target stream index out of range");
  const SpatialCovarianceSet &first = streams[target];
  SpatialCovarianceSet out;
  out.num_channels = first.num_channels;
  const auto m = static_cast<Eigen::Index>(first.num_channels);
  out.matrices.assign(first.NumFrequencies(), CMatrix::Zero(m, m));
  out.mass.assign(first.NumFrequencies(), 0.0);
  out.zero_mass.assign(first.NumFrequencies(), true);
  for (std::size_t j = 0; j < streams.size(); ++j) {
    if (j == target) continue;
    const SpatialCovarianceSet &s = streams[j];
    if (s.num_channels != first.num_channels ||
        s.NumFrequencies() != first.NumFrequencies())
      throw InputError("covariance sets disagree in shape");
    for (std::size_t f = 0; f < s.NumFrequencies(); ++f) {
      out.matrices[f] += s.matrices[f];
      out.mass[f] += s.mass[f];
      out.zero_mass[f] = out.zero_mass[f] && s.zero_mass[f];
    }
  }
  return out;
}

}  // namespace mcsep::beamform
