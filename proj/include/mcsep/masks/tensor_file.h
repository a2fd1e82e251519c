// include/mcsep/masks/tensor_file.h

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

#ifndef MCSEP_MASKS_TENSOR_FILE_H_
#define MCSEP_MASKS_TENSOR_FILE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mcsep/masks/masks.h"

namespace mcsep::masks {

// Binary tensor file, all fields little-endian:
//   bytes 0-3   magic "MCST"
//   uint32      version (1)
//   uint32      ndim
//   uint32[ndim] dims
//   float32[prod(dims)] values, row-major (last dim fastest)
struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> values;

  std::size_t NumElements() const;
};

void WriteTensor(const std::string &path, const Tensor &tensor);
Tensor ReadTensor(const std::string &path);

// Masks as a [streams, frames, frequencies] tensor. Labels are not stored.
void WriteMaskSet(const std::string &path, const MaskSet &masks);

// A tensor with num_speakers streams is taken as speaker masks only; one with
// num_speakers + 1 streams carries a trailing noise mask.
MaskSet ReadMaskSet(const std::string &path, std::size_t num_speakers);

}  // namespace mcsep::masks

#endif  // MCSEP_MASKS_TENSOR_FILE_H_
