// core/wav.h

// Copyright 2026  The inear Authors
//
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

#ifndef INEAR_CORE_WAV_H_
#define INEAR_CORE_WAV_H_

#include <string>

#include "inear/core/audio_buffer.h"

namespace inear::core {

enum class WavFormat { kPcm16, kFloat32 };

/// Decodes RIFF/WAVE with PCM 16-bit or IEEE float 32-bit samples
/// (WAVE_FORMAT_EXTENSIBLE accepted), mono or stereo.  Throws IoError.
AudioBuffer DecodeWav(const std::string &bytes);
/// 16-bit output rounds half away from zero and saturates.
std::string EncodeWav(const AudioBuffer &buffer,
                      WavFormat format = WavFormat::kPcm16);

AudioBuffer ReadWav(const std::string &path);
void WriteWav(const std::string &path, const AudioBuffer &buffer,
              WavFormat format = WavFormat::kPcm16);

std::string ReadFileBytes(const std::string &path);
void WriteFileBytes(const std::string &path, const std::string &bytes);

}  // namespace inear::core

#endif  // INEAR_CORE_WAV_H_
