// src/util/io-utils.cc

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

#include "hasr/util/io-utils.h"

#include <unistd.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hasr/error.h"

namespace hasr {

void AtomicWriteFile(const std::string &path,
                     const std::function<void(std::ostream &)> &writer,
                     bool binary) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, binary ? std::ios::binary | std::ios::out
                                 : std::ios::out);
    if (!os) throw Error("WriteFailed", "cannot open " + tmp + " for writing");
    try {
      writer(os);
    } catch (...) {
      os.close();
      std::remove(tmp.c_str());
      throw;
    }
    os.flush();
    if (!os) {
      std::remove(tmp.c_str());
      throw Error("WriteFailed", "error writing " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw Error("WriteFailed", "cannot rename " + tmp + " to " + path + ": " +
                                   ec.message());
  }
}

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string ReadFileBytes(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<CorpusLine> ParseCorpus(const std::vector<std::string> &lines) {
  std::vector<CorpusLine> out;
  out.reserve(lines.size());
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      out.push_back({"line-" + std::to_string(i + 1), line});
    } else {
      out.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
  }
  return out;
}

std::vector<CorpusLine> ReadCorpus(const std::string &path) {
  return ParseCorpus(ReadLines(path));
}

IniData ReadIni(const std::string &path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw Error("ConfigParse", e.what());
  }
  IniData data;
  for (const auto &[name, node] : tree) {
    if (node.empty()) {
      data[""][name] = node.get_value<std::string>();
      continue;
    }
    auto &section = data[name];
    for (const auto &[key, value] : node)
      section[key] = value.get_value<std::string>();
  }
  return data;
}

}  // namespace hasr
