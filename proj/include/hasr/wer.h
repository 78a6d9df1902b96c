// include/hasr/wer.h

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

#ifndef HASR_WER_H_
#define HASR_WER_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hasr/textnorm.h"
#include "hasr/util/io-utils.h"

namespace hasr {

enum class EditOp { kOk, kSub, kDel, kIns };

const char *EditOpName(EditOp op);

struct AlignedPair {
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
  EditOp op;
};

/// Minimum edit distance alignment with unit costs. On equal cost the
/// backtrace prefers the diagonal (match or substitution), then deletion,
/// then insertion.
std::vector<AlignedPair> Align(const std::vector<std::string> &ref,
                               const std::vector<std::string> &hyp);

struct EditCounts {
  int64_t sub = 0, del = 0, ins = 0, ref_len = 0;
  int64_t Errors() const { return sub + del + ins; }
  EditCounts &operator+=(const EditCounts &o);
};

/// Counts for one aligned pair of sequences. With `lenient_apostrophe`,
/// substitutions whose words agree after stripping edge apostrophes count
/// as correct and are retagged kOk.
EditCounts ScoreAlignment(std::vector<AlignedPair> *alignment, bool lenient_apostrophe,
                          const NormalizationRules &rules = NormalizationRules::GaelicDefaults());

struct UtteranceScore {
  std::string id;
  EditCounts counts;
  std::vector<AlignedPair> alignment;
};

struct EvalReport {
  EditCounts totals;
  std::vector<UtteranceScore> utterances;  // in reference order
  /// (S + D + I) / N. Throws Error("EmptyReference") when N is zero.
  double Wer() const;

  /// "%WER x.xx [ errors / N, I ins, D del, S sub ]" then "WER x.xx%".
  void WriteSummary(std::ostream &os) const;
  /// Header "utt_id\tsub\tdel\tins\tref_len" then one row per utterance.
  void WriteTsv(std::ostream &os) const;
};

UtteranceScore ScoreUtterance(const std::string &id, const std::vector<std::string> &ref,
                              const std::vector<std::string> &hyp, bool lenient_apostrophe);

/// Pairs hypotheses with references by utterance id. A hypothesis without
/// a reference raises Error("MissingReference"); a reference without a
/// hypothesis is scored against an empty hypothesis.
EvalReport ComputeWer(const std::vector<CorpusLine> &refs,
                      const std::vector<CorpusLine> &hyps, bool lenient_apostrophe);

}  // namespace hasr

#endif  // HASR_WER_H_
