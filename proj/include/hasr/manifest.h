// include/hasr/manifest.h

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

#ifndef HASR_MANIFEST_H_
#define HASR_MANIFEST_H_

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hasr/segment.h"

namespace hasr {

enum class Provenance { kManual, kPseudo, kAugmented };

const char *ProvenanceName(Provenance p);
/// Throws Error("BadManifest") for unknown names.
Provenance ParseProvenance(const std::string &name);

struct ManifestRow {
  std::string segment_id;
  std::string path;
  double start = 0.0;
  double end = 0.0;
  std::string transcript;  // space-separated words
  Provenance provenance = Provenance::kManual;
};

/// "srcid-SSSSSSS-EEEEEEE" with start and end in centiseconds.
std::string SegmentId(const std::string &source_id, double start, double end);

class Manifest {
 public:
  /// Throws Error("DuplicateSegment") if the id is already present.
  void Add(const ManifestRow &row);
  /// Appends all rows of `other`; same duplicate rule.
  void Merge(const Manifest &other);
  const std::vector<ManifestRow> &Rows() const { return rows_; }
  size_t Size() const { return rows_.size(); }

  /// TSV with header "segment_id path start end transcript provenance".
  void Write(std::ostream &os) const;
  void Write(const std::string &path) const;
  /// Throws Error("BadManifest") or Error("DuplicateSegment").
  static Manifest Read(std::istream &is);
  static Manifest Read(const std::string &path);

 private:
  std::vector<ManifestRow> rows_;
  std::set<std::string> ids_;
};

/// One pseudo-labelled row per segment. `source_paths` maps source ids to
/// the audio or posteriorgram file the row should point at.
Manifest MakePseudoManifest(const std::vector<Segment> &segments,
                            const std::map<std::string, std::string> &source_paths);

}  // namespace hasr

#endif  // HASR_MANIFEST_H_
