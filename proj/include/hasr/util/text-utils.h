// include/hasr/util/text-utils.h

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

#ifndef HASR_UTIL_TEXT_UTILS_H_
#define HASR_UTIL_TEXT_UTILS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hasr {

/// Splits on ASCII whitespace, dropping empty fields.
std::vector<std::string> SplitWhitespace(std::string_view line);

/// Splits on a single delimiter, keeping empty fields.
std::vector<std::string> Split(std::string_view line, char delim);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

std::string_view Trim(std::string_view s);

/// Shortest decimal representation that parses back to the same value.
std::string FormatDouble(double v);
std::string FormatFloat(float v);

/// Strict numeric parsing; the whole field must be consumed. Accepts
/// "inf", "-inf" and "nan" as produced by FormatDouble.
bool ParseDouble(std::string_view s, double *out);
bool ParseFloat(std::string_view s, float *out);
bool ParseInt(std::string_view s, int64_t *out);

}  // namespace hasr

#endif  // HASR_UTIL_TEXT_UTILS_H_
