// src/util/utf8.cc

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

#include "hasr/util/utf8.h"

#include <unordered_map>

namespace hasr {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

struct PairHash {
  size_t operator()(const std::pair<char32_t, char32_t> &p) const {
    return (static_cast<size_t>(p.first) << 21) ^ p.second;
  }
};

using ComposeTable =
    std::unordered_map<std::pair<char32_t, char32_t>, char32_t, PairHash>;

ComposeTable BuildComposeTable() {
  ComposeTable t;
  constexpr char32_t kGrave = 0x300, kAcute = 0x301, kCirc = 0x302,
                     kTilde = 0x303, kDiaer = 0x308;
  // Latin-1: uppercase forms, lowercase is +0x20.
  const struct {
    char32_t base, mark, composed;
  } upper[] = {
      {'A', kGrave, 0xC0}, {'A', kAcute, 0xC1}, {'A', kCirc, 0xC2},
      {'A', kTilde, 0xC3}, {'A', kDiaer, 0xC4}, {'E', kGrave, 0xC8},
      {'E', kAcute, 0xC9}, {'E', kCirc, 0xCA},  {'E', kDiaer, 0xCB},
      {'I', kGrave, 0xCC}, {'I', kAcute, 0xCD}, {'I', kCirc, 0xCE},
      {'I', kDiaer, 0xCF}, {'N', kTilde, 0xD1}, {'O', kGrave, 0xD2},
      {'O', kAcute, 0xD3}, {'O', kCirc, 0xD4},  {'O', kTilde, 0xD5},
      {'O', kDiaer, 0xD6}, {'U', kGrave, 0xD9}, {'U', kAcute, 0xDA},
      {'U', kCirc, 0xDB},  {'U', kDiaer, 0xDC}, {'Y', kAcute, 0xDD},
  };
  for (const auto &e : upper) {
    t[{e.base, e.mark}] = e.composed;
    t[{e.base + 0x20, e.mark}] = e.composed + 0x20;
  }
  t[{'y', kDiaer}] = 0xFF;
  t[{'Y', kDiaer}] = 0x178;
  // Latin Extended-A pairs (upper, lower share the mark).
  const struct {
    char32_t base, mark, composed;
  } ext[] = {
      {'C', kAcute, 0x106}, {'C', kCirc, 0x108},  {'G', kCirc, 0x11C},
      {'H', kCirc, 0x124},  {'I', kTilde, 0x128}, {'J', kCirc, 0x134},
      {'N', kAcute, 0x143}, {'R', kAcute, 0x154}, {'S', kAcute, 0x15A},
      {'S', kCirc, 0x15C},  {'U', kTilde, 0x168}, {'W', kCirc, 0x174},
      {'Y', kCirc, 0x176},  {'Z', kAcute, 0x179}, {'L', kAcute, 0x139},
  };
  for (const auto &e : ext) {
    t[{e.base, e.mark}] = e.composed;
    t[{e.base + 0x20, e.mark}] = e.composed + 1;
  }
  return t;
}

}  // namespace

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    int extra;
    char32_t cp;
    if (c < 0x80) {
      out.push_back(c);
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + extra >= text.size()) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string EncodeUtf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) out += EncodeUtf8(cp);
  return out;
}

std::vector<std::string> SplitCodepoints(std::string_view text) {
  std::vector<std::string> out;
  for (char32_t cp : DecodeUtf8(text)) out.push_back(EncodeUtf8(cp));
  return out;
}

std::u32string ComposeLatin(std::u32string_view text) {
  static const ComposeTable table = BuildComposeTable();
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (!out.empty() && cp >= 0x300 && cp <= 0x36F) {
      auto it = table.find({out.back(), cp});
      if (it != table.end()) {
        out.back() = it->second;
        continue;
      }
    }
    out.push_back(cp);
  }
  return out;
}

char32_t ToLowerLatin(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;
  if (cp < 0x100 || cp > 0x17F) return cp;
  if (cp == 0x130) return 'i';
  if (cp == 0x178) return 0xFF;
  bool even_upper = (cp <= 0x137) || (cp >= 0x14A && cp <= 0x177);
  bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
  if (even_upper && cp % 2 == 0) return cp + 1;
  if (odd_upper && cp % 2 == 1) return cp + 1;
  return cp;
}

bool IsUnicodeSpace(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\v': case '\f': case '\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

}  // namespace hasr
