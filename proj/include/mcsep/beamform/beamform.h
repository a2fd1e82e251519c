// include/mcsep/beamform/beamform.h

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

#ifndef MCSEP_BEAMFORM_BEAMFORM_H_
#define MCSEP_BEAMFORM_BEAMFORM_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mcsep/common.h"
#include "mcsep/dsp/stft.h"
#include "mcsep/masks/masks.h"
#include "mcsep/masks/separator.h"

namespace mcsep::beamform {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Per-frequency M x M spatial covariance matrices.
struct SpatialCovarianceSet {
  std::size_t num_channels = 0;
  std::vector<CMatrix> matrices;
  // Mask mass sum_t G[t, f] behind each matrix.
  std::vector<double> mass;
  // Frequencies whose mask mass was zero; their matrix is zero.
  std::vector<bool> zero_mass;

  std::size_t NumFrequencies() const { return matrices.size(); }

  // Throws InputError if some matrix has max|V - V^H| > tolerance * max|V|.
  void CheckHermitian(double tolerance = 1e-12) const;
};

// V[f] = sum_t G[t,f] z[t,f] z[t,f]^H / sum_t G[t,f]. The mask is laid out
// frames x frequencies. Output matrices are exactly Hermitian.
SpatialCovarianceSet SpatialCovariance(const dsp::Spectrogram &spec,
                                       std::span<const double> mask);

// One covariance set per mask stream, sharing the per-frequency gather.
std::vector<SpatialCovarianceSet> StreamCovariances(const dsp::Spectrogram &spec,
                                                    const masks::MaskSet &masks);

// Sum of every stream's covariance except `target` (noise stream included).
SpatialCovarianceSet InterferenceCovariance(
    std::span<const SpatialCovarianceSet> streams, std::size_t target);

struct MvdrOptions {
  // delta = diagonal_loading * trace(V_interference) / M.
  double diagonal_loading = 1e-7;
  // |trace| below trace_floor * M falls back to the passthrough weight.
  double trace_floor = 1e-12;
  double hermitian_tolerance = 1e-12;
};

struct BeamformerWeights {
  MicIndex reference_mic;
  std::vector<CVector> weights;  // per frequency, length M
  // Frequencies that fell back to the one-hot reference selector.
  std::vector<bool> passthrough;
  // Frequencies where a positive diagonal load was added.
  std::vector<bool> loaded;

  std::size_t NumFrequencies() const { return weights.size(); }
  std::size_t NumPassthrough() const;
  std::size_t NumLoaded() const;
};

// w[f] = (Vi^-1 Vt) u / trace(Vi^-1 Vt) with Vi diagonally loaded, computed
// by a Cholesky solve rather than an explicit inverse. Frequencies with zero
// target mass, zero interference, a failed factorisation or a near-zero
// trace use w = u and are flagged.
BeamformerWeights MvdrWeights(const SpatialCovarianceSet &target,
                              const SpatialCovarianceSet &interference,
                              MicIndex ref_mic, const MvdrOptions &options = {});

// S[t, f] = w[f]^H z[t, f]; single-channel result.
dsp::Spectrogram ApplyBeamformer(const BeamformerWeights &weights,
                                 const dsp::Spectrogram &spec);

struct MvdrSeparation {
  masks::SeparatorOutput output;
  std::vector<BeamformerWeights> weights;  // one per speaker
};

// STFT, one covariance per mask stream, MVDR per speaker, beamforming and
// inverse STFT. A noise stream is derived when the masks lack one.
MvdrSeparation SeparateMvdr(const dsp::Waveform &mixture,
                            const masks::MaskSet &masks,
                            const dsp::StftConfig &config, MicIndex ref_mic,
                            const MvdrOptions &options = {});

// Weights of all speakers as a [K, F, M, 2] (real, imag) tensor file.
void WriteWeights(const std::string &path,
                  std::span<const BeamformerWeights> weights);

}  // namespace mcsep::beamform

#endif  // MCSEP_BEAMFORM_BEAMFORM_H_
