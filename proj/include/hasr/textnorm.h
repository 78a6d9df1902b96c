// include/hasr/textnorm.h

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

#ifndef HASR_TEXTNORM_H_
#define HASR_TEXTNORM_H_

#include <map>
#include <set>
#include <string>
#include <vector>

namespace hasr {

/// Orthographic cleaning rules applied before tokenization, LM training and
/// scoring. Strings hold single UTF-8 encoded code points.
struct NormalizationRules {
  std::set<char32_t> letter_set;
  std::map<char32_t, char32_t> accent_map;
  std::string noise_token = "<spn>";
  std::set<char32_t> apostrophe_chars;

  /// 18-letter Gaelic orthography plus grave vowels; acute vowels map to
  /// grave; ASCII apostrophe and U+2019.
  static NormalizationRules GaelicDefaults();

  /// Reads a rules file with sections [letters] (set = ...), [accent_map]
  /// (from = to pairs), [noise] (token = ...) and [apostrophes]
  /// (chars = ...). Missing sections keep the Gaelic defaults.
  static NormalizationRules FromFile(const std::string &path);

  /// Throws Error("BadRules") when the type invariants do not hold.
  void Validate() const;
};

struct NormalizedUtterance {
  std::string source_id;
  std::vector<std::string> tokens;
};

/// Case-folds, composes accents, applies accent_map and replaces any word
/// that still contains a character outside the letter set (apostrophes and
/// hyphens allowed) by the noise token. Edge punctuation is stripped first
/// and words that become empty are dropped.
NormalizedUtterance NormalizeText(const std::string &raw,
                                  const NormalizationRules &rules,
                                  const std::string &source_id = "");

/// Removes all leading and trailing apostrophes. Throws Error("EmptyToken")
/// for an empty word.
std::string StripEdgeApostrophes(const std::string &word,
                                 const NormalizationRules &rules);

}  // namespace hasr

#endif  // HASR_TEXTNORM_H_
