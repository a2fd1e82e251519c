// include/mcsep/scene/wav.h

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

#ifndef MCSEP_SCENE_WAV_H_
#define MCSEP_SCENE_WAV_H_

#include <string>

#include "mcsep/dsp/waveform.h"

namespace mcsep::scene {

enum class SampleFormat { kPcm16, kFloat32 };

SampleFormat ParseSampleFormat(const std::string &name);
std::string SampleFormatName(SampleFormat format);

// Reads RIFF/WAVE with 16-bit PCM or 32-bit IEEE float samples (plain or
// WAVE_FORMAT_EXTENSIBLE). PCM is scaled to [-1, 1). Throws InputError on
// unreadable or unsupported files.
dsp::Waveform ReadWav(const std::string &path);

// PCM16 output is rounded and clipped to the int16 range.
void WriteWav(const std::string &path, const dsp::Waveform &waveform,
              SampleFormat format = SampleFormat::kFloat32);

// Value that `sample` takes after a write/read cycle in `format`.
double Quantize(double sample, SampleFormat format);

}  // namespace mcsep::scene

#endif  // MCSEP_SCENE_WAV_H_
