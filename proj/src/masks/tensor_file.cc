// src/masks/tensor_file.cc

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

#include "mcsep/masks/tensor_file.h"

#include <cstring>
#include <fstream>
#include <iterator>

namespace mcsep::masks {

namespace {

constexpr char kMagic[4] = {'M', 'C', 'S', 'T'};
constexpr std::uint32_t kVersion = 1;

void Put32(std::vector<unsigned char> &out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8)
    out.push_back(static_cast<unsigned char>((v >> s) & 0xFF));
}

std::uint32_t Get32(const std::vector<unsigned char> &in, std::size_t pos) {
  return static_cast<std::uint32_t>(in[pos]) |
         (static_cast<std::uint32_t>(in[pos + 1]) << 8) |
         (static_cast<std::uint32_t>(in[pos + 2]) << 16) |
         (static_cast<std::uint32_t>(in[pos + 3]) << 24);
}

}  // namespace

std::size_t Tensor::NumElements() const {
  std::size_t n = 1;
  for (std::uint32_t d : dims) n *= d;
  return n;
}

void WriteTensor(const std::string &path, const Tensor &tensor) {
  if (tensor.values.size() != tensor.NumElements())
    throw InputError("tensor values do not match its dims");
  std::vector<unsigned char> out(kMagic, kMagic + 4);
  Put32(out, kVersion);
  Put32(out, static_cast<std::uint32_t>(tensor.dims.size()));
  for (std::uint32_t d : tensor.dims) Put32(out, d);
  for (float v : tensor.values) {
    std::uint32_t raw;
    std::memcpy(&raw, &v, sizeof raw);
    Put32(out, raw);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot write tensor file " + path);
  file.write(reinterpret_cast<const char *>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw InputError("failed writing tensor file " + path);
}

Tensor ReadTensor(const std::string &path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open tensor file " + path);
  const std::vector<unsigned char> in((std::istreambuf_iterator<char>(file)),
                                      std::istreambuf_iterator<char>());
  if (in.size() < 12 || std::memcmp(in.data(), kMagic, 4) != 0)
    throw InputError(path + ": not a tensor file");
  if (Get32(in, 4) != kVersion)
    throw InputError(path + ": unsupported tensor version");
  const std::uint32_t ndim = Get32(in, 8);
  if (in.size() < 12 + 4 * static_cast<std::size_t>(ndim))
    throw InputError(path + ": truncated header");
  Tensor t;
  for (std::uint32_t i = 0; i < ndim; ++i) t.dims.push_back(Get32(in, 12 + 4 * i));
  const std::size_t offset = 12 + 4 * static_cast<std::size_t>(ndim);
  const std::size_t count = t.NumElements();
  if (in.size() != offset + 4 * count)
    throw InputError(path + ": payload size does not match dims");
  t.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t raw = Get32(in, offset + 4 * i);
    std::memcpy(&t.values[i], &raw, sizeof raw);
  }
  return t;
}

void WriteMaskSet(const std::string &path, const MaskSet &masks) {
  Tensor t;
  t.dims = {static_cast<std::uint32_t>(masks.NumStreams()),
            static_cast<std::uint32_t>(masks.NumFrames()),
            static_cast<std::uint32_t>(masks.NumFrequencies())};
  t.values.assign(masks.Values().begin(), masks.Values().end());
  WriteTensor(path, t);
}

MaskSet ReadMaskSet(const std::string &path, std::size_t num_speakers) {
  const Tensor t = ReadTensor(path);
  if (t.dims.size() != 3)
    throw InputError(path + ": mask tensors must have 3 dims");
  const std::size_t streams = t.dims[0];
  bool with_noise;
  if (streams == num_speakers) {
    with_noise = false;
  } else if (streams == num_speakers + 1) {
    with_noise = true;
  } else {
    throw InputError(path + ": " + std::to_string(streams) +
                     " mask streams for " + std::to_string(num_speakers) +
                     " speakers");
  }
  MaskSet masks(streams, t.dims[1], t.dims[2],
                MaskSet::DefaultLabels(num_speakers, with_noise),
                std::vector<double>(t.values.begin(), t.values.end()));
  masks.CheckRange(1.0);
  return masks;
}

}  // namespace mcsep::masks
