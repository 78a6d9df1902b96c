// include/hasr/ngram.h

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

#ifndef HASR_NGRAM_H_
#define HASR_NGRAM_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hasr {

using WordId = int32_t;

/// log10 value standing in for probability zero (ARPA convention).
inline constexpr double kLog10Zero = -99.0;

struct NGramEntry {
  double log10_prob = kLog10Zero;
  double log10_backoff = 0.0;
  bool has_backoff = false;
};

struct WordSeqHash {
  size_t operator()(const std::vector<WordId> &v) const {
    size_t h = v.size();
    for (WordId w : v) h = h * 1000003u ^ static_cast<size_t>(w);
    return h;
  }
};

using NGramTable =
    std::unordered_map<std::vector<WordId>, NGramEntry, WordSeqHash>;

struct ScoreOptions {
  bool sentence_begin = true;  // condition the first token on <s>
  bool sentence_end = true;    // add the </s> term
};

/// Backoff n-gram model in ARPA semantics: P(w|h) is the stored value for
/// (h, w) if present, otherwise backoff(h) * P(w|h minus its first word).
class BackoffNGramLM {
 public:
  static constexpr const char *kBos = "<s>";
  static constexpr const char *kEos = "</s>";
  static constexpr const char *kUnk = "<unk>";

  explicit BackoffNGramLM(int order = 1);

  int order() const { return order_; }
  WordId bos() const { return 0; }
  WordId eos() const { return 1; }
  WordId unk() const { return 2; }

  /// Returns the id of `word`, adding it to the vocabulary if needed.
  WordId AddWord(const std::string &word);
  /// Returns the id of `word`, or unk() if the word is unknown.
  WordId Lookup(const std::string &word) const;
  bool Contains(const std::string &word) const {
    return word_to_id_.count(word) > 0;
  }
  const std::string &Word(WordId id) const { return words_[id]; }
  size_t VocabSize() const { return words_.size(); }
  const std::vector<std::string> &words() const { return words_; }

  void SetEntry(const std::vector<WordId> &ngram, const NGramEntry &entry);
  const NGramEntry *Find(std::span<const WordId> ngram) const;
  /// Table of n-grams with exactly n words, 1 <= n <= order.
  const NGramTable &Table(int n) const { return tables_.at(n - 1); }

  /// log10 P(w | history); only the last order-1 history words matter.
  double LogProb(std::span<const WordId> history, WordId w) const;

  /// Total log10 probability of a token sequence; OOV tokens go through
  /// <unk>.
  double ScoreSequence(const std::vector<std::string> &tokens,
                       const ScoreOptions &opts = {}) const;

  /// All stored n-grams of length < order that carry a backoff weight, in
  /// sorted order. These are the contexts with explicit continuations.
  std::vector<std::vector<WordId>> Contexts() const;

  /// Keys of table n sorted by word id sequence.
  std::vector<std::vector<WordId>> SortedKeys(int n) const;

 private:
  int order_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> word_to_id_;
  std::vector<NGramTable> tables_;
};

/// Interpolated Kneser-Ney with a single fixed discount applied at every
/// order. Lower orders use continuation counts except for n-grams that
/// start with <s>. The discounted unigram mass goes to <unk>.
/// Throws Error("EmptyCorpus"), Error("BadOrder") or Error("BadDiscount").
BackoffNGramLM TrainKneserNey(
    const std::vector<std::vector<std::string>> &corpus, int order,
    double discount = 0.75);

struct PerplexityResult {
  double log10_prob = 0.0;
  size_t num_tokens = 0;  // includes one </s> per sentence
  size_t num_oov = 0;
  double perplexity = 0.0;
};

/// Throws Error("EmptyCorpus") when there is nothing to score.
PerplexityResult ComputePerplexity(
    const BackoffNGramLM &lm,
    const std::vector<std::vector<std::string>> &corpus);

/// Static mixture lambda * P_a + (1 - lambda) * P_b over the union of the
/// stored n-grams, with backoff weights recomputed so that every context
/// normalizes. Words missing from one model get probability zero under it.
/// Throws Error("BadWeight") for lambda outside [0, 1].
BackoffNGramLM Interpolate(const BackoffNGramLM &a, const BackoffNGramLM &b,
                           double lambda);

void WriteArpa(const BackoffNGramLM &lm, std::ostream &os);
void WriteArpa(const BackoffNGramLM &lm, const std::string &path);
/// Throws Error("ArpaParse") with the offending line number.
BackoffNGramLM ReadArpa(std::istream &is);
BackoffNGramLM ReadArpa(const std::string &path);

}  // namespace hasr

#endif  // HASR_NGRAM_H_
