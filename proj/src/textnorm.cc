// src/textnorm.cc

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

#include "hasr/textnorm.h"

#include "hasr/error.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"
#include "hasr/util/utf8.h"

namespace hasr {

namespace {

constexpr char32_t kHyphen = U'-';

bool IsEdgePunctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F && cp != '\'' && cp != '-') ||
           (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0xA1: case 0xAB: case 0xBB: case 0xBF:   // ¡ « » ¿
    case 0x2013: case 0x2014: case 0x2018:        // en and em dash, left single quote
    case 0x201C: case 0x201D: case 0x201E:        // “ ” „
    case 0x2026:                                  // …
      return true;
    default:
      return false;
  }
}

std::set<char32_t> ParseCodepointList(const std::string &value) {
  std::set<char32_t> out;
  for (const std::string &field : SplitWhitespace(value)) {
    for (char32_t cp : ComposeLatin(DecodeUtf8(field))) out.insert(cp);
  }
  return out;
}

char32_t SingleCodepoint(const std::string &s, const std::string &what) {
  std::u32string cps = ComposeLatin(DecodeUtf8(std::string(Trim(s))));
  if (cps.size() != 1)
    throw Error("BadRules", what + " must be a single character: '" + s + "'");
  return cps[0];
}

}  // namespace

NormalizationRules NormalizationRules::GaelicDefaults() {
  NormalizationRules rules;
  for (char32_t c : std::u32string(U"abcdefghilmnoprstu")) rules.letter_set.insert(c);
  for (char32_t c : std::u32string(U"àèìòù")) rules.letter_set.insert(c);
  rules.accent_map = {{U'á', U'à'}, {U'é', U'è'}, {U'í', U'ì'},
                      {U'ó', U'ò'}, {U'ú', U'ù'}};
  rules.apostrophe_chars = {U'\'', U'’'};
  return rules;
}

NormalizationRules NormalizationRules::FromFile(const std::string &path) {
  NormalizationRules rules = GaelicDefaults();
  IniData ini = ReadIni(path);
  if (auto it = ini.find("letters"); it != ini.end()) {
    if (auto kv = it->second.find("set"); kv != it->second.end())
      rules.letter_set = ParseCodepointList(kv->second);
  }
  if (auto it = ini.find("accent_map"); it != ini.end()) {
    rules.accent_map.clear();
    for (const auto &[from, to] : it->second)
      rules.accent_map[SingleCodepoint(from, "accent_map key")] =
          SingleCodepoint(to, "accent_map value");
  }
  if (auto it = ini.find("noise"); it != ini.end()) {
    if (auto kv = it->second.find("token"); kv != it->second.end())
      rules.noise_token = std::string(Trim(kv->second));
  }
  if (auto it = ini.find("apostrophes"); it != ini.end()) {
    if (auto kv = it->second.find("chars"); kv != it->second.end())
      rules.apostrophe_chars = ParseCodepointList(kv->second);
  }
  rules.Validate();
  return rules;
}

void NormalizationRules::Validate() const {
  if (letter_set.empty()) throw Error("BadRules", "letter_set is empty");
  if (noise_token.empty()) throw Error("BadRules", "noise_token is empty");
  for (const auto &[from, to] : accent_map) {
    if (!letter_set.count(to))
      throw Error("BadRules", "accent_map target '" + EncodeUtf8(to) +
                                  "' is not in letter_set");
  }
  if (DecodeUtf8(noise_token).size() == 1 &&
      letter_set.count(DecodeUtf8(noise_token)[0]))
    throw Error("BadRules", "noise_token collides with a letter");
}

NormalizedUtterance NormalizeText(const std::string &raw,
                                  const NormalizationRules &rules,
                                  const std::string &source_id) {
  NormalizedUtterance out;
  out.source_id = source_id;
  std::u32string text = ComposeLatin(DecodeUtf8(raw));

  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsUnicodeSpace(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !IsUnicodeSpace(text[j])) ++j;
    if (j == i) break;
    std::u32string word = text.substr(i, j - i);
    i = j;

    if (EncodeUtf8(word) == rules.noise_token) {
      out.tokens.push_back(rules.noise_token);
      continue;
    }
    size_t b = 0, e = word.size();
    while (b < e && IsEdgePunctuation(word[b])) ++b;
    while (e > b && IsEdgePunctuation(word[e - 1])) --e;
    if (b == e) continue;
    word = word.substr(b, e - b);

    bool has_letter = false, clean = true;
    for (char32_t &cp : word) {
      cp = ToLowerLatin(cp);
      if (auto it = rules.accent_map.find(cp); it != rules.accent_map.end())
        cp = it->second;
      if (rules.letter_set.count(cp)) {
        has_letter = true;
      } else if (cp != kHyphen && !rules.apostrophe_chars.count(cp)) {
        clean = false;
      }
    }
    if (!clean) {
      out.tokens.push_back(rules.noise_token);
    } else if (has_letter) {
      out.tokens.push_back(EncodeUtf8(word));
    }
  }
  return out;
}

std::string StripEdgeApostrophes(const std::string &word,
                                 const NormalizationRules &rules) {
  if (word.empty()) throw Error("EmptyToken", "cannot strip an empty word");
  std::u32string cps = DecodeUtf8(word);
  size_t b = 0, e = cps.size();
  while (b < e && rules.apostrophe_chars.count(cps[b])) ++b;
  while (e > b && rules.apostrophe_chars.count(cps[e - 1])) --e;
  return EncodeUtf8(std::u32string_view(cps).substr(b, e - b));
}

}  // namespace hasr
