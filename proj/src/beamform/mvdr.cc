// src/beamform/mvdr.cc

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

std::size_t BeamformerWeights::NumPassthrough() const {
  std::size_t n = 0;
  for (bool b : passthrough) n += b ? 1 : 0;
  return n;
}

std::size_t BeamformerWeights::NumLoaded() const {
  std::size_t n = 0;
  for (bool b : loaded) n += b ? 1 : 0;
  return n;
}

BeamformerWeights MvdrWeights(const SpatialCovarianceSet &target,
                              const SpatialCovarianceSet &interference,
                              MicIndex ref_mic, const MvdrOptions &options) {
  if (target.num_channels != interference.num_channels ||
      target.NumFrequencies() != interference.NumFrequencies())
    throw InputError("target and interference covariances disagree in shape");
  ref_mic.CheckWithin(target.num_channels);
  if (!(options.diagonal_loading >= 0.0))
    throw ConfigError("diagonal_loading must be non-negative");
  target.CheckHermitian(options.hermitian_tolerance);
  interference.CheckHermitian(options.hermitian_tolerance);

  const auto m = static_cast<Eigen::Index>(target.num_channels);
  const auto r = static_cast<Eigen::Index>(ref_mic.zero_based());
  const std::size_t num_freqs = target.NumFrequencies();
  const CVector selector = CVector::Unit(m, r);

  BeamformerWeights out;
  out.reference_mic = ref_mic;
  out.weights.assign(num_freqs, selector);
  out.passthrough.assign(num_freqs, true);
  out.loaded.assign(num_freqs, false);

  for (std::size_t f = 0; f < num_freqs; ++f) {
    const bool target_empty = f < target.zero_mass.size() && target.zero_mass[f];
    if (target_empty) continue;
    const CMatrix &vi = interference.matrices[f];
    const double trace_i = vi.diagonal().real().sum();
    if (!(trace_i > 0.0)) continue;

    const double delta = options.diagonal_loading * trace_i / static_cast<double>(m);
    CMatrix loaded = vi;
    loaded.diagonal().array() += delta;
    Eigen::LLT<CMatrix> llt(loaded);
    if (llt.info() != Eigen::Success) continue;

    const CMatrix numerator = llt.solve(target.matrices[f]);
    const Complex trace = numerator.trace();
    if (!(std::abs(trace) >= options.trace_floor * static_cast<double>(m))) continue;
    CVector w = numerator.col(r) / trace;
    if (!w.allFinite()) continue;

    out.weights[f] = std::move(w);
    out.passthrough[f] = false;
    out.loaded[f] = delta > 0.0;
  }
  return out;
}

dsp::Spectrogram ApplyBeamformer(const BeamformerWeights &weights,
                                 const dsp::Spectrogram &spec) {
  if (weights.NumFrequencies() != spec.NumFrequencies())
    throw InputError("beamformer has " + std::to_string(weights.NumFrequencies()) +
                     " frequencies, spectrogram has " +
                     std::to_string(spec.NumFrequencies()));
  const std::size_t channels = spec.NumChannels();
  for (const CVector &w : weights.weights)
    if (static_cast<std::size_t>(w.size()) != channels)
      throw InputError("beamformer channel count does not match spectrogram");

  dsp::Spectrogram out(1, spec.Config(), spec.OriginalLength(), spec.SampleRate());
  for (std::size_t t = 0; t < spec.NumFrames(); ++t) {
    auto dst = out.Frame(0, t);
    for (std::size_t f = 0; f < spec.NumFrequencies(); ++f) {
      const CVector &w = weights.weights[f];
      double re = 0.0, im = 0.0;
      for (std::size_t c = 0; c < channels; ++c) {
        // conj(w) * z
        const Complex wc = w(static_cast<Eigen::Index>(c));
        const Complex z = spec(c, t, f);
        re += wc.real() * z.real() + wc.imag() * z.imag();
        im += wc.real() * z.imag() - wc.imag() * z.real();
      }
      dst[f] = Complex(re, im);
    }
  }
  return out;
}

}  // namespace mcsep::beamform
