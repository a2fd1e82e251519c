// include/mcsep/scene/geometry.h

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

#ifndef MCSEP_SCENE_GEOMETRY_H_
#define MCSEP_SCENE_GEOMETRY_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace mcsep::scene {

using Point3 = std::array<double, 3>;

struct ArrayGeometry {
  std::vector<Point3> mic_positions;  // meters
  double speed_of_sound = 343.0;      // m/s

  std::size_t NumMics() const { return mic_positions.size(); }
  void Validate() const;

  // Uniform linear array along x, centred on the origin.
  static ArrayGeometry Linear(std::size_t num_mics, double spacing);
  // Uniform circular array in the xy plane, first mic on +x.
  static ArrayGeometry Circular(std::size_t num_mics, double radius);
};

// Unit vector pointing from the array origin towards the source.
Point3 DirectionVector(double azimuth, double elevation);

// Far-field arrival delay in seconds at each microphone relative to the
// array origin: tau_m = -<p_m, u> / c. Mics closer to the source hear it
// earlier (negative delay).
std::vector<double> SteeringDelays(const ArrayGeometry &geometry,
                                   double azimuth, double elevation);

constexpr std::size_t kFractionalDelayTaps = 81;

// y[n] = x(n - delay) by Hann-windowed sinc interpolation over 81 taps.
// Samples outside the signal are taken as zero. Integer delays are exact
// shifts. Throws InputError unless |delay| < signal length.
std::vector<double> FractionalDelay(std::span<const double> signal,
                                    double delay);

}  // namespace mcsep::scene

#endif  // MCSEP_SCENE_GEOMETRY_H_
