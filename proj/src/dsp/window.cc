// src/dsp/window.cc

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
#include <numbers>

#include "mcsep/dsp/stft.h"

namespace mcsep::dsp {

WindowKind ParseWindowKind(const std::string &name) {
  if (name == "hann") return WindowKind::kHann;
  throw ConfigError("unsupported window kind '" + name + "'");
}

std::string WindowKindName(WindowKind kind) {
  switch (kind) {
    case WindowKind::kHann:
      return "hann";
  }
  throw ConfigError("unsupported window kind");
}

std::vector<double> MakeWindow(WindowKind kind, std::size_t length) {
  if (length < 2) throw ConfigError("window length must be >= 2");
  if (kind != WindowKind::kHann) throw ConfigError("unsupported window kind");
  std::vector<double> w(length);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(length);
  for (std::size_t n = 0; n < length; ++n)
    w[n] = 0.5 * (1.0 - std::cos(step * static_cast<double>(n)));
  return w;
}

}  // namespace mcsep::dsp
