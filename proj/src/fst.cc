// src/fst.cc

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

#include "hasr/fst.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "hasr/error.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"

namespace hasr {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

Label SymbolTable::AddSymbol(const std::string &sym) {
  auto it = ids_.find(sym);
  if (it != ids_.end()) return it->second;
  Label id = static_cast<Label>(symbols_.size());
  symbols_.push_back(sym);
  ids_.emplace(sym, id);
  return id;
}

Label SymbolTable::Find(const std::string &sym) const {
  auto it = ids_.find(sym);
  return it == ids_.end() ? -1 : it->second;
}

void SymbolTable::Write(std::ostream &os) const {
  for (size_t i = 0; i < symbols_.size(); ++i) os << symbols_[i] << ' ' << i << '\n';
}

void SymbolTable::Write(const std::string &path) const {
  AtomicWriteFile(path, [this](std::ostream &os) { Write(os); });
}

SymbolTable SymbolTable::Read(std::istream &is) {
  SymbolTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    int64_t id;
    if (f.size() != 2 || !ParseInt(f[1], &id) || id < 0)
      throw Error("BadSymbolTable", "line " + std::to_string(line_no) +
                                        ": expected 'symbol id'");
    if (id == 0) {
      if (f[0] != kEpsilonSymbol)
        throw Error("BadSymbolTable", "id 0 must be " + std::string(kEpsilonSymbol));
      continue;
    }
    if (static_cast<size_t>(id) != table.symbols_.size() || table.ids_.count(f[0]))
      throw Error("BadSymbolTable", "line " + std::to_string(line_no) +
                                        ": ids must be dense and symbols unique");
    table.AddSymbol(f[0]);
  }
  return table;
}

SymbolTable SymbolTable::Read(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return Read(is);
}

StateId WeightedFst::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

size_t WeightedFst::NumArcs() const {
  size_t n = 0;
  for (const auto &s : states_) n += s.arcs.size();
  return n;
}

Label WeightedFst::MaxInputLabel() const {
  Label m = 0;
  for (const auto &s : states_)
    for (const auto &a : s.arcs) m = std::max(m, a.ilabel);
  return m;
}

void WeightedFst::Validate() const {
  if (states_.empty()) return;
  if (start_ < 0 || start_ >= NumStates())
    throw Error("BadFst", "start state out of range");
  for (StateId s = 0; s < NumStates(); ++s)
    for (const auto &a : states_[s].arcs)
      if (a.nextstate < 0 || a.nextstate >= NumStates())
        throw Error("BadFst", "arc from state " + std::to_string(s) +
                                  " targets invalid state");
}

namespace {

void WriteState(const WeightedFst &fst, StateId s, std::ostream &os) {
  for (const Arc &a : fst.Arcs(s))
    os << s << ' ' << a.nextstate << ' ' << a.ilabel << ' ' << a.olabel << ' '
       << FormatDouble(a.weight) << '\n';
  if (fst.IsFinal(s)) os << s << ' ' << FormatDouble(fst.Final(s)) << '\n';
}

}  // namespace

void WriteFstText(const WeightedFst &fst, std::ostream &os) {
  if (fst.Start() == kNoState) return;
  WriteState(fst, fst.Start(), os);
  for (StateId s = 0; s < fst.NumStates(); ++s)
    if (s != fst.Start()) WriteState(fst, s, os);
}

void WriteFstText(const WeightedFst &fst, const std::string &path) {
  AtomicWriteFile(path, [&fst](std::ostream &os) { WriteFstText(fst, os); });
}

WeightedFst ReadFstText(std::istream &is) {
  WeightedFst fst;
  std::string line;
  size_t line_no = 0;
  auto ensure = [&fst](int64_t s) {
    while (fst.NumStates() <= s) fst.AddState();
  };
  auto fail = [&line_no](const std::string &msg) {
    return Error("BadFst", "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++line_no;
    auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    int64_t src;
    if (!ParseInt(f[0], &src) || src < 0) throw fail("bad source state");
    ensure(src);
    if (fst.Start() == kNoState) fst.SetStart(static_cast<StateId>(src));
    if (f.size() == 1 || f.size() == 2) {
      double w = 0.0;
      if (f.size() == 2 && !ParseDouble(f[1], &w)) throw fail("bad final weight");
      fst.SetFinal(static_cast<StateId>(src), w);
    } else if (f.size() == 5) {
      int64_t dst, il, ol;
      double w;
      if (!ParseInt(f[1], &dst) || dst < 0 || !ParseInt(f[2], &il) || il < 0 ||
          !ParseInt(f[3], &ol) || ol < 0 || !ParseDouble(f[4], &w))
        throw fail("malformed arc");
      ensure(dst);
      fst.AddArc(static_cast<StateId>(src),
                 Arc{static_cast<Label>(il), static_cast<Label>(ol), w,
                     static_cast<StateId>(dst)});
    } else {
      throw fail("expected 'src dst ilabel olabel weight' or 'state weight'");
    }
  }
  return fst;
}

WeightedFst ReadFstText(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return ReadFstText(is);
}

}  // namespace hasr
