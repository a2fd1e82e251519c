// include/mcsep/common.h

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

#ifndef MCSEP_COMMON_H_
#define MCSEP_COMMON_H_

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcsep {

using Complex = std::complex<double>;

// Error taxonomy shared by every module. The CLI maps these onto exit codes
// 2 (configuration), 3 (input/data) and 4 (numerical).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Microphone index. User-facing files and flags count microphones from 1;
// the in-memory API stores the zero-based position.
class MicIndex {
 public:
  constexpr MicIndex() = default;

  static constexpr MicIndex FromZeroBased(std::size_t index) {
    return MicIndex(index);
  }
  static MicIndex FromOneBased(long long index) {
    if (index < 1)
      throw ConfigError("microphone index must be >= 1, got " +
                        std::to_string(index));
    return MicIndex(static_cast<std::size_t>(index - 1));
  }

  constexpr std::size_t zero_based() const { return index_; }
  constexpr std::size_t one_based() const { return index_ + 1; }

  // Throws ConfigError when the index does not address one of num_mics.
  void CheckWithin(std::size_t num_mics) const {
    if (index_ >= num_mics)
      throw ConfigError("reference microphone " + std::to_string(one_based()) +
                        " out of range [1, " + std::to_string(num_mics) + "]");
  }

  friend constexpr bool operator==(MicIndex, MicIndex) = default;

 private:
  constexpr explicit MicIndex(std::size_t index) : index_(index) {}
  std::size_t index_ = 0;
};

}  // namespace mcsep

#endif  // MCSEP_COMMON_H_
