// include/hasr/util/io-utils.h

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

#ifndef HASR_UTIL_IO_UTILS_H_
#define HASR_UTIL_IO_UTILS_H_

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace hasr {

/// Writes through a temporary file in the same directory and renames it
/// over `path` once `writer` returns, so readers never see partial output.
void AtomicWriteFile(const std::string &path,
                     const std::function<void(std::ostream &)> &writer,
                     bool binary = false);

/// Throws Error("MissingPath") if the file cannot be opened.
std::vector<std::string> ReadLines(const std::string &path);
std::string ReadFileBytes(const std::string &path);

/// One line of a corpus file: "utt-id<TAB>text" or just "text". Lines
/// without an id get "line-<n>" (1-based).
struct CorpusLine {
  std::string id;
  std::string text;
};
std::vector<CorpusLine> ReadCorpus(const std::string &path);
std::vector<CorpusLine> ParseCorpus(const std::vector<std::string> &lines);

/// "key = value" text with [section] headers and '#' or ';' comments.
/// Keys outside any section land in section "".
using IniData = std::map<std::string, std::map<std::string, std::string>>;
IniData ReadIni(const std::string &path);

}  // namespace hasr

#endif  // HASR_UTIL_IO_UTILS_H_
