// src/manifest.cc

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

#include "hasr/manifest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "hasr/error.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"

namespace hasr {

namespace {

const char kHeader[] = "segment_id\tpath\tstart\tend\ttranscript\tprovenance";

}  // namespace

const char *ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kManual: return "manual";
    case Provenance::kPseudo: return "pseudo";
    case Provenance::kAugmented: return "augmented";
  }
  return "manual";
}

Provenance ParseProvenance(const std::string &name) {
  if (name == "manual") return Provenance::kManual;
  if (name == "pseudo") return Provenance::kPseudo;
  if (name == "augmented") return Provenance::kAugmented;
  throw Error("BadManifest", "unknown provenance '" + name + "'");
}

std::string SegmentId(const std::string &source_id, double start, double end) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-%07lld-%07lld",
                static_cast<long long>(std::llround(start * 100.0)),
                static_cast<long long>(std::llround(end * 100.0)));
  return source_id + buf;
}

void Manifest::Add(const ManifestRow &row) {
  if (!ids_.insert(row.segment_id).second)
    throw Error("DuplicateSegment", "segment id '" + row.segment_id + "' appears twice");
  rows_.push_back(row);
}

void Manifest::Merge(const Manifest &other) {
  for (const auto &r : other.rows_) Add(r);
}

void Manifest::Write(std::ostream &os) const {
  os << kHeader << '\n';
  for (const auto &r : rows_)
    os << r.segment_id << '\t' << r.path << '\t' << FormatDouble(r.start) << '\t'
       << FormatDouble(r.end) << '\t' << r.transcript << '\t'
       << ProvenanceName(r.provenance) << '\n';
}

void Manifest::Write(const std::string &path) const {
  AtomicWriteFile(path, [this](std::ostream &os) { Write(os); });
}

Manifest Manifest::Read(std::istream &is) {
  Manifest m;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == kHeader) continue;
    auto f = Split(line, '\t');
    ManifestRow r;
    if (f.size() != 6 || !ParseDouble(f[2], &r.start) || !ParseDouble(f[3], &r.end))
      throw Error("BadManifest", "line " + std::to_string(line_no) +
                                     ": expected 6 tab-separated columns");
    r.segment_id = f[0];
    r.path = f[1];
    r.transcript = f[4];
    r.provenance = ParseProvenance(f[5]);
    m.Add(r);
  }
  return m;
}

Manifest Manifest::Read(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return Read(is);
}

Manifest MakePseudoManifest(const std::vector<Segment> &segments,
                            const std::map<std::string, std::string> &source_paths) {
  Manifest m;
  for (const auto &s : segments) {
    ManifestRow r;
    r.segment_id = SegmentId(s.source_id, s.start, s.end);
    auto it = source_paths.find(s.source_id);
    r.path = it == source_paths.end() ? s.source_id : it->second;
    r.start = s.start;
    r.end = s.end;
    r.transcript = Join(s.words, " ");
    r.provenance = Provenance::kPseudo;
    m.Add(r);
  }
  return m;
}

}  // namespace hasr
