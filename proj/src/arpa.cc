// src/arpa.cc

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

#include <fstream>
#include <istream>
#include <ostream>

#include "hasr/error.h"
#include "hasr/ngram.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"

namespace hasr {

void WriteArpa(const BackoffNGramLM &lm, std::ostream &os) {
  os << "\n\\data\\\n";
  for (int n = 1; n <= lm.order(); ++n)
    os << "ngram " << n << "=" << lm.Table(n).size() << "\n";
  for (int n = 1; n <= lm.order(); ++n) {
    os << "\n\\" << n << "-grams:\n";
    for (const auto &key : lm.SortedKeys(n)) {
      const NGramEntry &e = lm.Table(n).at(key);
      os << FormatDouble(e.log10_prob) << '\t';
      for (size_t i = 0; i < key.size(); ++i) {
        if (i > 0) os << ' ';
        os << lm.Word(key[i]);
      }
      if (n < lm.order() && e.has_backoff)
        os << '\t' << FormatDouble(e.log10_backoff);
      os << '\n';
    }
  }
  os << "\n\\end\\\n";
}

void WriteArpa(const BackoffNGramLM &lm, const std::string &path) {
  AtomicWriteFile(path, [&lm](std::ostream &os) { WriteArpa(lm, os); });
}

BackoffNGramLM ReadArpa(std::istream &is) {
  std::string line;
  size_t line_no = 0;
  auto fail = [&line_no](const std::string &msg) {
    return Error("ArpaParse", "line " + std::to_string(line_no) + ": " + msg);
  };
  auto next_line = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  bool found_data = false;
  while (next_line()) {
    if (Trim(line) == "\\data\\") {
      found_data = true;
      break;
    }
  }
  if (!found_data) throw fail("missing \\data\\ header");

  std::vector<int64_t> declared;
  while (next_line()) {
    std::string_view t = Trim(line);
    if (t.empty()) {
      if (!declared.empty()) break;
      continue;
    }
    if (t.substr(0, 6) != "ngram ") throw fail("expected 'ngram N=count'");
    std::string_view spec = Trim(t.substr(6));
    size_t eq = spec.find('=');
    int64_t n, count;
    if (eq == std::string_view::npos || !ParseInt(Trim(spec.substr(0, eq)), &n) ||
        !ParseInt(Trim(spec.substr(eq + 1)), &count) || count < 0)
      throw fail("malformed count line '" + line + "'");
    if (n != static_cast<int64_t>(declared.size()) + 1)
      throw fail("n-gram orders must be declared in sequence");
    declared.push_back(count);
  }
  if (declared.empty()) throw fail("no n-gram counts declared");

  const int order = static_cast<int>(declared.size());
  BackoffNGramLM lm(order);
  int section = 0;
  int64_t seen = 0;
  auto close_section = [&]() {
    if (section > 0 && seen != declared[section - 1])
      throw fail("section \\" + std::to_string(section) + "-grams: has " +
                 std::to_string(seen) + " entries, header declares " +
                 std::to_string(declared[section - 1]));
  };
  bool ended = false;
  while (next_line()) {
    std::string_view t = Trim(line);
    if (t.empty()) continue;
    if (t.front() == '\\') {
      close_section();
      if (t == "\\end\\") {
        ended = true;
        break;
      }
      int64_t n;
      if (t.size() < 9 || t.substr(t.size() - 7) != "-grams:")
        throw fail("malformed section header '" + line + "'");
      std::string_view num = t.substr(1, t.find('-') - 1);
      if (!ParseInt(num, &n) || n != section + 1 || n > order)
        throw fail("unexpected section header '" + line + "'");
      section = static_cast<int>(n);
      seen = 0;
      continue;
    }
    if (section == 0) throw fail("n-gram entry outside a section");
    auto fields = SplitWhitespace(t);
    const size_t n = static_cast<size_t>(section);
    if (fields.size() != n + 1 && fields.size() != n + 2)
      throw fail("expected " + std::to_string(n) + "-gram entry");
    NGramEntry e;
    if (!ParseDouble(fields[0], &e.log10_prob))
      throw fail("bad log-probability '" + fields[0] + "'");
    if (fields.size() == n + 2) {
      if (!ParseDouble(fields[n + 1], &e.log10_backoff))
        throw fail("bad backoff weight '" + fields[n + 1] + "'");
      e.has_backoff = true;
    }
    if (e.log10_prob > 1e-9) throw fail("log-probability above zero");
    std::vector<WordId> key;
    for (size_t i = 1; i <= n; ++i) {
      if (section == 1) {
        key.push_back(lm.AddWord(fields[i]));
      } else {
        if (!lm.Contains(fields[i]))
          throw fail("word '" + fields[i] + "' has no unigram entry");
        key.push_back(lm.Lookup(fields[i]));
      }
    }
    lm.SetEntry(key, e);
    ++seen;
  }
  if (!ended) throw fail("missing \\end\\ marker");
  if (section != order) throw fail("missing n-gram sections");
  return lm;
}

BackoffNGramLM ReadArpa(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return ReadArpa(is);
}

}  // namespace hasr
