// include/hasr/graph.h

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

#ifndef HASR_GRAPH_H_
#define HASR_GRAPH_H_

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hasr/fst.h"
#include "hasr/ngram.h"
#include "hasr/subword.h"

namespace hasr {

/// Grammar acceptor for a backoff LM: one state per LM context, word arcs
/// weighted -ln P(w|h), epsilon backoff arcs weighted -ln backoff(h), and
/// </s> realized as final weights. Input and output symbols are the LM
/// vocabulary without <s> and </s>.
WeightedFst GrammarFst(const BackoffNGramLM &lm);

/// Word -> unit sequences; a word may have several pronunciations.
struct Lexicon {
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;

  /// "word unit1 unit2 ..." per line.
  void Write(const std::string &path) const;
  static Lexicon Read(const std::string &path);
};

/// True for tokens such as "<unk>" or "<spn>" that have no spelling.
bool IsSpecialToken(const std::string &word);

/// Character-split pronunciations; special tokens are skipped.
Lexicon GraphemeLexicon(const std::vector<std::string> &words);

/// Pronunciations from an acoustic subword model. With an empty
/// `lm_boundary` every word is encoded as a whole word. Otherwise the
/// words are subword LM tokens: those starting with `lm_boundary` are
/// word-initial, the rest continue the previous word.
Lexicon SubwordLexicon(const std::vector<std::string> &words,
                       const SubwordModel &acoustic_model,
                       const std::string &lm_boundary = "");

struct LexiconOptions {
  /// When non-empty, an optional silence unit may appear between words.
  std::string silence_unit;
  double silence_cost = 0.0;
};

/// Transducer from unit sequences to word sequences with closure. Each
/// word's output label sits on its first unit arc. Output symbols extend
/// `words` (if given) with any lexicon words it lacks; input symbols list
/// units in sorted order. Throws Error("EmptyPron").
WeightedFst LexiconFst(const Lexicon &lexicon,
                       std::shared_ptr<const SymbolTable> words = nullptr,
                       const LexiconOptions &opts = {});

/// Left context used at the start of an utterance.
inline constexpr const char *kNoLeftContext = "<s>";

using BiphoneCounts = std::map<std::pair<std::string, std::string>, int64_t>;

/// Counts (left unit, unit) pairs over unit sequences; the first unit of
/// each sequence gets kNoLeftContext as its left context.
BiphoneCounts CountBiphones(const std::vector<std::vector<std::string>> &units);

/// Mapping from (left context, unit) to a tied class. Classes 0..U-1 are
/// the per-unit fallback (monophone) classes in sorted unit order; the
/// remaining ids are distinct biphone classes.
class BiphoneTying {
 public:
  int32_t NumClasses() const { return num_classes_; }
  const std::vector<std::string> &Units() const { return units_; }
  /// Throws Error("UnknownUnit") if `unit` has no fallback class.
  int32_t Fallback(const std::string &unit) const;
  int32_t Class(const std::string &left, const std::string &unit) const;
  const std::map<std::pair<std::string, std::string>, int32_t> &Biphones() const {
    return biphones_;
  }
  /// Symbol table "c0", "c1", ... used for class labels (label = class+1).
  std::shared_ptr<SymbolTable> ClassSymbols() const;

  void Write(const std::string &path) const;
  static BiphoneTying Read(const std::string &path);

 private:
  friend BiphoneTying ClusterBiphones(const BiphoneCounts &, int64_t,
                                      const std::vector<std::string> &);
  friend BiphoneTying ReadTying(std::istream &);
  std::vector<std::string> units_;
  std::map<std::string, int32_t> fallback_;
  std::map<std::pair<std::string, std::string>, int32_t> biphones_;
  int32_t num_classes_ = 0;
};

inline constexpr int64_t kMonophoneThreshold = std::numeric_limits<int64_t>::max();

/// Biphones seen at least `threshold` times get their own class; all others
/// share the fallback class of their center unit. `extra_units` adds units
/// that may be absent from the counts.
BiphoneTying ClusterBiphones(const BiphoneCounts &counts, int64_t threshold,
                             const std::vector<std::string> &extra_units = {});

/// Transducer from tied-class labels to units carrying one unit of left
/// context. `units` is the unit symbol table (the lexicon's input side).
WeightedFst ContextFst(const BiphoneTying &tying,
                       std::shared_ptr<const SymbolTable> units);

/// One emitting state per class with a frame self-loop. Input labels are
/// class-frame labels (class + 1), outputs are class labels emitted once
/// per class occurrence.
WeightedFst TopologyFst(int32_t num_classes);

struct GraphOptions {
  bool determinize = true;
  double max_state_factor = 100.0;
};

/// Connect(RemoveEpsilon(H o C o L o G)), determinizing L o G and the final
/// graph where the state budget allows. Throws Error("EmptyGraph").
WeightedFst BuildDecodingGraph(const WeightedFst &H, const WeightedFst &C,
                               const WeightedFst &L, const WeightedFst &G,
                               const GraphOptions &opts = {});

}  // namespace hasr

#endif  // HASR_GRAPH_H_
