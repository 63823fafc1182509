// core/wav.cc

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

#include "inear/core/wav.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "inear/error.h"

namespace inear::core {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t ReadU16(const std::string &b, std::size_t pos) {
  return static_cast<uint16_t>(static_cast<uint8_t>(b[pos]) |
                               (static_cast<uint8_t>(b[pos + 1]) << 8));
}

uint32_t ReadU32(const std::string &b, std::size_t pos) {
  return static_cast<uint32_t>(ReadU16(b, pos)) |
         (static_cast<uint32_t>(ReadU16(b, pos + 2)) << 16);
}

void PutU16(std::string &b, uint16_t v) {
  b.push_back(static_cast<char>(v & 0xFF));
  b.push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string &b, uint32_t v) {
  PutU16(b, static_cast<uint16_t>(v & 0xFFFF));
  PutU16(b, static_cast<uint16_t>(v >> 16));
}

int16_t ToPcm16(double v) {
  const double scaled = v * 32767.0;
  double r = std::round(scaled);  // half away from zero
  if (r > 32767.0) r = 32767.0;
  if (r < -32768.0) r = -32768.0;
  return static_cast<int16_t>(r);
}

}  // namespace

AudioBuffer DecodeWav(const std::string &b) {
  if (b.size() < 12 || b.compare(0, 4, "RIFF") != 0 ||
      b.compare(8, 4, "WAVE") != 0)
    throw IoError("wav: not a RIFF/WAVE stream");
  std::size_t pos = 12;
  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  while (pos + 8 <= b.size()) {
    const std::string id = b.substr(pos, 4);
    const uint32_t size = ReadU32(b, pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > b.size() && id != "data")
      throw IoError("wav: truncated chunk '" + id + "'");
    if (id == "fmt ") {
      if (size < 16) throw IoError("wav: short fmt chunk");
      format = ReadU16(b, body);
      channels = ReadU16(b, body + 2);
      rate = ReadU32(b, body + 4);
      bits = ReadU16(b, body + 14);
      if (format == kFormatExtensible) {
        if (size < 40) throw IoError("wav: short extensible fmt chunk");
        format = ReadU16(b, body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw IoError("wav: data chunk before fmt chunk");
      if (channels < 1 || channels > 2)
        throw IoError("wav: only mono and stereo are supported");
      if (rate == 0) throw IoError("wav: zero sample rate");
      const bool pcm16 = format == kFormatPcm && bits == 16;
      const bool f32 = format == kFormatFloat && bits == 32;
      if (!pcm16 && !f32)
        throw IoError("wav: unsupported sample format (format " +
                      std::to_string(format) + ", " + std::to_string(bits) +
                      " bits)");
      const std::size_t avail = std::min<std::size_t>(size, b.size() - body);
      const std::size_t frame_bytes = channels * (bits / 8);
      const std::size_t frames = avail / frame_bytes;
      std::vector<std::vector<double>> data(channels,
                                            std::vector<double>(frames));
      for (std::size_t i = 0; i < frames; ++i) {
        for (int c = 0; c < channels; ++c) {
          const std::size_t p = body + i * frame_bytes + c * (bits / 8);
          if (pcm16) {
            data[c][i] = static_cast<int16_t>(ReadU16(b, p)) / 32767.0;
          } else {
            const uint32_t u = ReadU32(b, p);
            float f;
            std::memcpy(&f, &u, sizeof f);
            if (!std::isfinite(f)) throw IoError("wav: non-finite sample");
            data[c][i] = f;
          }
        }
      }
      return AudioBuffer(std::move(data), static_cast<int>(rate));
    }
    pos = body + size + (size & 1);
  }
  throw IoError("wav: no data chunk");
}

std::string EncodeWav(const AudioBuffer &buffer, WavFormat format) {
  const int channels = buffer.channel_count();
  if (channels < 1) throw InvalidArgument("wav: buffer has no channels");
  const uint16_t bits = format == WavFormat::kPcm16 ? 16 : 32;
  const uint32_t frame_bytes = channels * bits / 8;
  const uint32_t data_bytes =
      static_cast<uint32_t>(buffer.frames()) * frame_bytes;
  std::string b;
  b.reserve(44 + data_bytes);
  b += "RIFF";
  PutU32(b, 36 + data_bytes);
  b += "WAVEfmt ";
  PutU32(b, 16);
  PutU16(b, format == WavFormat::kPcm16 ? kFormatPcm : kFormatFloat);
  PutU16(b, static_cast<uint16_t>(channels));
  PutU32(b, static_cast<uint32_t>(buffer.sample_rate()));
  PutU32(b, static_cast<uint32_t>(buffer.sample_rate()) * frame_bytes);
  PutU16(b, static_cast<uint16_t>(frame_bytes));
  PutU16(b, bits);
  b += "data";
  PutU32(b, data_bytes);
  for (std::size_t i = 0; i < buffer.frames(); ++i) {
    for (int c = 0; c < channels; ++c) {
      const double v = buffer.channel(c)[i];
      if (format == WavFormat::kPcm16) {
        PutU16(b, static_cast<uint16_t>(ToPcm16(v)));
      } else {
        const float f = static_cast<float>(v);
        uint32_t u;
        std::memcpy(&u, &f, sizeof u);
        PutU32(b, u);
      }
    }
  }
  return b;
}

std::string ReadFileBytes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return ss.str();
}

void WriteFileBytes(const std::string &path, const std::string &bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write error on '" + path + "'");
}

AudioBuffer ReadWav(const std::string &path) {
  try {
    return DecodeWav(ReadFileBytes(path));
  } catch (const IoError &e) {
    throw IoError(path + ": " + e.what());
  }
}

void WriteWav(const std::string &path, const AudioBuffer &buffer,
              WavFormat format) {
  WriteFileBytes(path, EncodeWav(buffer, format));
}

}  // namespace inear::core
