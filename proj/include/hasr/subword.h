// include/hasr/subword.h

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

#ifndef HASR_SUBWORD_H_
#define HASR_SUBWORD_H_

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hasr {

/// Byte-pair-encoding model over code points. Units are word-position
/// independent: the only positional information is a boundary marker
/// prefixed to the first unit of every word. The marker is not part of the
/// inventory and never takes part in merges.
class SubwordModel {
 public:
  static constexpr const char *kDefaultBoundary = "\xE2\x96\x81";  // U+2581
  static constexpr const char *kUnk = "<unk>";

  SubwordModel() = default;

  /// Greedy highest-frequency merging until the inventory holds
  /// `vocab_size` units or no pair occurs at least twice. Equal counts go to
  /// the lexicographically smaller concatenation, then the smaller left
  /// unit. Throws Error("EmptyCorpus") or Error("VocabTooSmall").
  static SubwordModel Train(const std::vector<std::vector<std::string>> &corpus,
                            size_t vocab_size,
                            const std::string &boundary = kDefaultBoundary);

  /// Splits words into units. Characters outside the inventory become
  /// "<unk>"; the first unit of each word carries the boundary marker.
  std::vector<std::string> Encode(const std::vector<std::string> &words) const;

  /// Units for a single word; `word_initial` controls the marker.
  std::vector<std::string> EncodeWord(const std::string &word,
                                      bool word_initial = true) const;

  /// Joins units back into words, starting a new word at every marker.
  /// Throws Error("UnknownUnit") for units outside inventory and "<unk>".
  std::vector<std::string> Decode(const std::vector<std::string> &units) const;

  void Write(const std::string &path) const;
  static SubwordModel Read(const std::string &path);
  void Write(std::ostream &os) const;
  static SubwordModel Read(std::istream &is);

  const std::vector<std::pair<std::string, std::string>> &merges() const {
    return merges_;
  }
  /// Base characters (sorted) followed by merge results in merge order.
  const std::vector<std::string> &inventory() const { return inventory_; }
  const std::string &boundary() const { return boundary_; }
  size_t vocab_size() const { return vocab_size_; }
  bool InInventory(const std::string &unit) const {
    return inventory_set_.count(unit) > 0;
  }

 private:
  struct PairHash {
    size_t operator()(const std::pair<std::string, std::string> &p) const {
      return std::hash<std::string>()(p.first) * 31 +
             std::hash<std::string>()(p.second);
    }
  };

  void BuildIndex();

  size_t vocab_size_ = 0;
  std::string boundary_ = kDefaultBoundary;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::vector<std::string> inventory_;
  std::unordered_set<std::string> inventory_set_;
  std::unordered_map<std::pair<std::string, std::string>, size_t, PairHash>
      merge_rank_;
};

}  // namespace hasr

#endif  // HASR_SUBWORD_H_
