// src/scene/geometry.cc

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

#include "mcsep/scene/geometry.h"

#include <cmath>
#include <numbers>
#include <string>

#include "mcsep/common.h"

namespace mcsep::scene {

void ArrayGeometry::Validate() const {
  if (mic_positions.empty())
    throw ConfigError("array geometry needs at least one microphone");
  for (const Point3 &p : mic_positions)
    for (double v : p)
      if (!std::isfinite(v))
        throw ConfigError("microphone positions must be finite");
  if (!(speed_of_sound > 0.0) || !std::isfinite(speed_of_sound))
    throw ConfigError("speed of sound must be positive");
}

ArrayGeometry ArrayGeometry::Linear(std::size_t num_mics, double spacing) {
  ArrayGeometry g;
  const double first = -0.5 * spacing * static_cast<double>(num_mics - 1);
  for (std::size_t m = 0; m < num_mics; ++m)
    g.mic_positions.push_back({first + spacing * static_cast<double>(m), 0.0, 0.0});
  return g;
}

ArrayGeometry ArrayGeometry::Circular(std::size_t num_mics, double radius) {
  ArrayGeometry g;
  for (std::size_t m = 0; m < num_mics; ++m) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(m) /
                       static_cast<double>(num_mics);
    g.mic_positions.push_back({radius * std::cos(phi), radius * std::sin(phi), 0.0});
  }
  return g;
}

Point3 DirectionVector(double azimuth, double elevation) {
  return {std::cos(elevation) * std::cos(azimuth),
          std::cos(elevation) * std::sin(azimuth), std::sin(elevation)};
}

std::vector<double> SteeringDelays(const ArrayGeometry &geometry,
                                   double azimuth, double elevation) {
  geometry.Validate();
  const Point3 u = DirectionVector(azimuth, elevation);
  std::vector<double> tau;
  tau.reserve(geometry.NumMics());
  for (const Point3 &p : geometry.mic_positions)
    tau.push_back(-(p[0] * u[0] + p[1] * u[1] + p[2] * u[2]) /
                  geometry.speed_of_sound);
  return tau;
}

std::vector<double> FractionalDelay(std::span<const double> signal,
                                    double delay) {
  const auto length = static_cast<std::ptrdiff_t>(signal.size());
  if (!std::isfinite(delay) || !(std::abs(delay) < static_cast<double>(length)))
    throw InputError("delay " + std::to_string(delay) +
                     " out of range for a signal of " +
                     std::to_string(length) + " samples");
  std::vector<double> out(signal.size(), 0.0);
  const double whole = std::floor(delay);
  const double frac = delay - whole;
  const auto shift = static_cast<std::ptrdiff_t>(whole);

  if (frac == 0.0) {
    for (std::ptrdiff_t n = 0; n < length; ++n) {
      const std::ptrdiff_t src = n - shift;
      if (src >= 0 && src < length) out[static_cast<std::size_t>(n)] = signal[static_cast<std::size_t>(src)];
    }
    return out;
  }

  constexpr auto kHalf = static_cast<std::ptrdiff_t>(kFractionalDelayTaps / 2);
  constexpr double kWindowHalfWidth = static_cast<double>(kHalf + 1);
  std::array<double, kFractionalDelayTaps> kernel;
  for (std::ptrdiff_t j = -kHalf; j <= kHalf; ++j) {
    const double x = static_cast<double>(j) - frac;
    const double sinc = std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    const double window = 0.5 * (1.0 + std::cos(std::numbers::pi * x / kWindowHalfWidth));
    kernel[static_cast<std::size_t>(j + kHalf)] = sinc * window;
  }
  for (std::ptrdiff_t n = 0; n < length; ++n) {
    double acc = 0.0;
    for (std::ptrdiff_t j = -kHalf; j <= kHalf; ++j) {
      const std::ptrdiff_t src = n - shift - j;
      if (src >= 0 && src < length)
        acc += kernel[static_cast<std::size_t>(j + kHalf)] * signal[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

}  // namespace mcsep::scene
