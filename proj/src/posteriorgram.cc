// src/posteriorgram.cc

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

#include "hasr/posteriorgram.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "hasr/error.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"

namespace hasr {

static_assert(std::endian::native == std::endian::little,
              "binary posteriorgrams assume a little-endian host");

namespace {

const char kBinaryMagic[2] = {'\0', 'B'};

Error ShapeError(const std::string &utt, const std::string &msg) {
  return Error("MatrixShape", (utt.empty() ? std::string() : utt + ": ") + msg);
}

}  // namespace

Posteriorgram::Posteriorgram(std::string id, int32_t frames, int32_t classes,
                             double rate)
    : utt_id(std::move(id)), frame_rate(rate), num_frames(frames),
      num_classes(classes),
      data(static_cast<size_t>(std::max(frames, 0)) * std::max(classes, 0), 0.0f) {}

void Posteriorgram::Validate() const {
  if (num_frames < 1 || num_classes < 1)
    throw ShapeError(utt_id, "matrix must have at least one frame and one class");
  if (data.size() != static_cast<size_t>(num_frames) * num_classes)
    throw ShapeError(utt_id, "data size does not match header dimensions");
  if (!(frame_rate > 0.0) || !std::isfinite(frame_rate))
    throw ShapeError(utt_id, "frame rate must be positive");
  for (size_t i = 0; i < data.size(); ++i)
    if (!std::isfinite(data[i]))
      throw Error("NonFiniteScore", utt_id + ": frame " +
                                        std::to_string(i / num_classes) +
                                        " has a non-finite score");
}

void WritePosteriorgrams(const std::vector<Posteriorgram> &pgs, std::ostream &os,
                         bool binary) {
  if (binary) os.write(kBinaryMagic, 2);
  for (const auto &pg : pgs) {
    pg.Validate();
    os << pg.utt_id << ' ' << pg.num_frames << ' ' << pg.num_classes << ' '
       << FormatDouble(pg.frame_rate) << '\n';
    if (binary) {
      os.write(reinterpret_cast<const char *>(pg.data.data()),
               static_cast<std::streamsize>(pg.data.size() * sizeof(float)));
      continue;
    }
    for (int32_t t = 0; t < pg.num_frames; ++t) {
      for (int32_t k = 0; k < pg.num_classes; ++k) {
        if (k > 0) os << ' ';
        os << FormatFloat(pg(t, k));
      }
      os << '\n';
    }
  }
}

void WritePosteriorgrams(const std::vector<Posteriorgram> &pgs,
                         const std::string &path, bool binary) {
  AtomicWriteFile(
      path, [&](std::ostream &os) { WritePosteriorgrams(pgs, os, binary); }, binary);
}

namespace {

bool ReadHeader(std::istream &is, Posteriorgram *pg) {
  std::string line;
  while (std::getline(is, line)) {
    auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    int64_t frames, classes;
    double rate;
    if (f.size() != 4 || !ParseInt(f[1], &frames) || !ParseInt(f[2], &classes) ||
        !ParseDouble(f[3], &rate))
      throw ShapeError("", "bad header '" + line +
                               "'; expected 'utt-id n_frames n_classes frame_rate'");
    if (frames < 1 || classes < 1 || frames * classes > (int64_t{1} << 32))
      throw ShapeError(f[0], "header declares an empty or oversized matrix");
    *pg = Posteriorgram(f[0], static_cast<int32_t>(frames),
                        static_cast<int32_t>(classes), rate);
    return true;
  }
  return false;
}

}  // namespace

std::vector<Posteriorgram> ReadPosteriorgrams(std::istream &is) {
  std::vector<Posteriorgram> out;
  char magic[2] = {1, 1};
  is.read(magic, 2);
  const bool binary = is.gcount() == 2 && std::memcmp(magic, kBinaryMagic, 2) == 0;
  if (!binary) {
    is.clear();
    is.seekg(0);
  }
  Posteriorgram pg;
  while (ReadHeader(is, &pg)) {
    if (binary) {
      is.read(reinterpret_cast<char *>(pg.data.data()),
              static_cast<std::streamsize>(pg.data.size() * sizeof(float)));
      if (static_cast<size_t>(is.gcount()) != pg.data.size() * sizeof(float))
        throw ShapeError(pg.utt_id, "binary data shorter than the header declares");
    } else {
      std::string line;
      for (int32_t t = 0; t < pg.num_frames; ++t) {
        if (!std::getline(is, line))
          throw ShapeError(pg.utt_id, "expected " + std::to_string(pg.num_frames) +
                                          " rows, found " + std::to_string(t));
        auto f = SplitWhitespace(line);
        if (static_cast<int32_t>(f.size()) != pg.num_classes)
          throw ShapeError(pg.utt_id, "row " + std::to_string(t) + " has " +
                                          std::to_string(f.size()) + " columns, expected " +
                                          std::to_string(pg.num_classes));
        for (int32_t k = 0; k < pg.num_classes; ++k)
          if (!ParseFloat(f[k], &pg(t, k)))
            throw ShapeError(pg.utt_id, "row " + std::to_string(t) +
                                            ": bad value '" + f[k] + "'");
      }
    }
    pg.Validate();
    out.push_back(std::move(pg));
  }
  return out;
}

std::vector<Posteriorgram> ReadPosteriorgrams(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return ReadPosteriorgrams(is);
}

}  // namespace hasr
