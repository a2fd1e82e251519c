// src/scene/wav.cc

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

#include "mcsep/scene/wav.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "mcsep/common.h"

namespace mcsep::scene {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t Le16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t Le32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}
void Put16(std::vector<unsigned char> &out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}
void Put32(std::vector<unsigned char> &out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8)
    out.push_back(static_cast<unsigned char>((v >> s) & 0xFF));
}
void PutTag(std::vector<unsigned char> &out, const char *tag) {
  out.insert(out.end(), tag, tag + 4);
}

std::int16_t ToPcm16(double v) {
  const double scaled = std::nearbyint(v * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

}  // namespace

SampleFormat ParseSampleFormat(const std::string &name) {
  if (name == "pcm16") return SampleFormat::kPcm16;
  if (name == "float32") return SampleFormat::kFloat32;
  throw ConfigError("unknown WAV sample format '" + name + "'");
}

std::string SampleFormatName(SampleFormat format) {
  return format == SampleFormat::kPcm16 ? "pcm16" : "float32";
}

double Quantize(double sample, SampleFormat format) {
  if (format == SampleFormat::kFloat32)
    return static_cast<double>(static_cast<float>(sample));
  return static_cast<double>(ToPcm16(sample)) / 32768.0;
}

dsp::Waveform ReadWav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open WAV file " + path);
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw InputError(path + ": not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char *data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    const std::size_t size = Le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size() && std::memcmp(chunk, "data", 4) != 0)
      throw InputError(path + ": truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw InputError(path + ": short fmt chunk");
      format = Le16(chunk + 8);
      channels = Le16(chunk + 10);
      rate = Le32(chunk + 12);
      bits = Le16(chunk + 22);
      if (format == kFormatExtensible) {
        if (size < 40) throw InputError(path + ": short extensible fmt chunk");
        format = Le16(chunk + 8 + 24);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = std::min(size, bytes.size() - body);
    }
    pos = body + size + (size & 1);
  }
  if (channels == 0 || data == nullptr)
    throw InputError(path + ": missing fmt or data chunk");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32)
    throw InputError(path + ": unsupported sample format (format " +
                     std::to_string(format) + ", " + std::to_string(bits) +
                     " bits); expected PCM16 or float32");
  const std::size_t width = bits / 8;
  const std::size_t frames = data_size / (width * channels);

  dsp::Waveform out(channels, frames, static_cast<double>(rate));
  for (std::size_t n = 0; n < frames; ++n) {
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char *p = data + (n * channels + c) * width;
      if (pcm16) {
        out(c, n) = static_cast<double>(static_cast<std::int16_t>(Le16(p))) /
                    32768.0;
      } else {
        const std::uint32_t raw = Le32(p);
        float v;
        std::memcpy(&v, &raw, sizeof v);
        out(c, n) = static_cast<double>(v);
      }
    }
  }
  if (!out.AllFinite()) throw InputError(path + ": non-finite samples");
  return out;
}

void WriteWav(const std::string &path, const dsp::Waveform &waveform,
              SampleFormat format) {
  const std::uint16_t channels = static_cast<std::uint16_t>(waveform.NumChannels());
  const std::uint16_t bits = format == SampleFormat::kPcm16 ? 16 : 32;
  const std::uint32_t rate =
      static_cast<std::uint32_t>(std::lround(waveform.SampleRate()));
  const std::uint32_t block = channels * (bits / 8);
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(waveform.Length()) * block;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  Put32(out, 36 + data_size);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  Put32(out, 16);
  Put16(out, format == SampleFormat::kPcm16 ? kFormatPcm : kFormatFloat);
  Put16(out, channels);
  Put32(out, rate);
  Put32(out, rate * block);
  Put16(out, static_cast<std::uint16_t>(block));
  Put16(out, bits);
  PutTag(out, "data");
  Put32(out, data_size);
  for (std::size_t n = 0; n < waveform.Length(); ++n) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double v = waveform(c, n);
      if (format == SampleFormat::kPcm16) {
        Put16(out, static_cast<std::uint16_t>(ToPcm16(v)));
      } else {
        const float f = static_cast<float>(v);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof raw);
        Put32(out, raw);
      }
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot write WAV file " + path);
  file.write(reinterpret_cast<const char *>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw InputError("failed writing WAV file " + path);
}

}  // namespace mcsep::scene
