// src/wave.cc

// Copyright 2026  The hasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "hasr/wave.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "hasr/error.h"
#include "hasr/util/io-utils.h"

namespace hasr {

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

namespace {

uint32_t ReadU32(std::istream &is) {
  uint32_t v;
  is.read(reinterpret_cast<char *>(&v), 4);
  if (!is) throw Error("BadWave", "unexpected end of file");
  return v;
}

uint16_t ReadU16(std::istream &is) {
  uint16_t v;
  is.read(reinterpret_cast<char *>(&v), 2);
  if (!is) throw Error("BadWave", "unexpected end of file");
  return v;
}

void Expect(std::istream &is, const char *tag) {
  char buf[4];
  is.read(buf, 4);
  if (!is || std::memcmp(buf, tag, 4) != 0)
    throw Error("BadWave", std::string("expected '") + tag + "' tag");
}

void WriteU32(std::ostream &os, uint32_t v) { os.write(reinterpret_cast<char *>(&v), 4); }
void WriteU16(std::ostream &os, uint16_t v) { os.write(reinterpret_cast<char *>(&v), 2); }

}  // namespace

Wave ReadWave(std::istream &is) {
  Expect(is, "RIFF");
  ReadU32(is);
  Expect(is, "WAVE");
  Wave wave;
  bool have_fmt = false;
  while (true) {
    char id[4];
    is.read(id, 4);
    if (!is) throw Error("BadWave", "no data chunk");
    uint32_t size = ReadU32(is);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw Error("BadWave", "fmt chunk too small");
      uint16_t format = ReadU16(is);
      uint16_t channels = ReadU16(is);
      uint32_t rate = ReadU32(is);
      ReadU32(is);  // byte rate
      ReadU16(is);  // block align
      uint16_t bits = ReadU16(is);
      is.ignore(size - 16 + (size & 1));
      if (format != 1 || channels != 1 || bits != 16)
        throw Error("BadWave", "only 16-bit PCM mono is supported");
      if (rate == 0 || rate > (1u << 24)) throw Error("BadWave", "bad sample rate");
      wave.sample_rate = static_cast<int32_t>(rate);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      if (!have_fmt) throw Error("BadWave", "data chunk before fmt chunk");
      wave.samples.resize(size / 2);
      is.read(reinterpret_cast<char *>(wave.samples.data()),
              static_cast<std::streamsize>(wave.samples.size() * 2));
      if (!is) throw Error("BadWave", "data chunk shorter than declared");
      return wave;
    } else {
      is.ignore(size + (size & 1));
    }
  }
}

Wave ReadWave(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  try {
    return ReadWave(is);
  } catch (const Error &e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void WriteWave(const Wave &wave, std::ostream &os) {
  const uint32_t data_bytes = static_cast<uint32_t>(wave.samples.size() * 2);
  os.write("RIFF", 4);
  WriteU32(os, 36 + data_bytes);
  os.write("WAVEfmt ", 8);
  WriteU32(os, 16);
  WriteU16(os, 1);
  WriteU16(os, 1);
  WriteU32(os, static_cast<uint32_t>(wave.sample_rate));
  WriteU32(os, static_cast<uint32_t>(wave.sample_rate) * 2);
  WriteU16(os, 2);
  WriteU16(os, 16);
  os.write("data", 4);
  WriteU32(os, data_bytes);
  os.write(reinterpret_cast<const char *>(wave.samples.data()), data_bytes);
}

void WriteWave(const Wave &wave, const std::string &path) {
  AtomicWriteFile(path, [&wave](std::ostream &os) { WriteWave(wave, os); }, true);
}

}  // namespace hasr
