// include/hasr/util/utf8.h

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

#ifndef HASR_UTIL_UTF8_H_
#define HASR_UTIL_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace hasr {

/// Decodes UTF-8; malformed sequences become U+FFFD.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t cp);

/// Splits a UTF-8 string into one string per code point.
std::vector<std::string> SplitCodepoints(std::string_view text);

/// Canonical composition for Latin letters followed by a combining grave,
/// acute, circumflex, tilde or diaeresis. Covers the precomposed forms in
/// Latin-1 Supplement and Latin Extended-A that carry those marks; other
/// combining sequences are left decomposed.
std::u32string ComposeLatin(std::u32string_view text);

/// Lowercases ASCII, Latin-1 Supplement and Latin Extended-A letters;
/// everything else is returned unchanged.
char32_t ToLowerLatin(char32_t cp);

bool IsUnicodeSpace(char32_t cp);

}  // namespace hasr

#endif  // HASR_UTIL_UTF8_H_
