// src/lattice.cc

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

#include "hasr/lattice.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "hasr/error.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"

namespace hasr {

int32_t Lattice::AddState(int32_t frame) {
  arcs_.emplace_back();
  frames_.push_back(frame);
  finals_.emplace_back(kNotFinal, kNotFinal);
  return NumStates() - 1;
}

std::string Lattice::WordString(Label l) const {
  if (words_ && l >= 0 && static_cast<size_t>(l) < words_->Size()) return words_->Symbol(l);
  return l == kEpsilon ? SymbolTable::kEpsilonSymbol : std::to_string(l);
}

void Lattice::Validate() const {
  if (NumStates() == 0) throw Error("BadLattice", "lattice has no states");
  bool any_final = false;
  for (int32_t s = 0; s < NumStates(); ++s) {
    any_final = any_final || IsFinal(s);
    for (const auto &a : arcs_[s]) {
      if (a.nextstate <= s || a.nextstate >= NumStates())
        throw Error("BadLattice", "arc from state " + std::to_string(s) +
                                      " does not point forward");
      if (frames_[a.nextstate] < frames_[s])
        throw Error("BadLattice", "frame index decreases along an arc from state " +
                                      std::to_string(s));
    }
  }
  if (!any_final) throw Error("BadLattice", "lattice has no final state");
}

double LatticeBestCost(const Lattice &lat) {
  const int32_t n = lat.NumStates();
  if (n == 0) return Tropical::Zero();
  std::vector<double> alpha(n, Tropical::Zero());
  alpha[0] = 0.0;
  double best = Tropical::Zero();
  for (int32_t s = 0; s < n; ++s) {
    if (Tropical::IsZero(alpha[s])) continue;
    for (const auto &a : lat.Arcs(s))
      alpha[a.nextstate] = std::min(alpha[a.nextstate], alpha[s] + (a.am + a.lm));
    if (lat.IsFinal(s))
      best = std::min(best, alpha[s] + (lat.Final(s).first + lat.Final(s).second));
  }
  return best;
}

namespace {

std::string FormatPair(double am, double lm) {
  return FormatDouble(am) + "," + FormatDouble(lm);
}

bool ParsePair(const std::string &field, double *am, double *lm) {
  auto p = Split(field, ',');
  return p.size() == 2 && ParseDouble(p[0], am) && ParseDouble(p[1], lm);
}

}  // namespace

void WriteLattices(const std::vector<std::pair<std::string, Lattice>> &lats,
                   std::ostream &os) {
  for (const auto &[id, lat] : lats) {
    os << id << '\n';
    for (int32_t s = 0; s < lat.NumStates(); ++s)
      for (const auto &a : lat.Arcs(s))
        os << s << ' ' << a.nextstate << ' ' << lat.WordString(a.word) << ' '
           << FormatPair(a.am, a.lm) << '\n';
    for (int32_t s = 0; s < lat.NumStates(); ++s)
      if (lat.IsFinal(s))
        os << s << ' ' << FormatPair(lat.Final(s).first, lat.Final(s).second) << '\n';
    os << "frames";
    for (int32_t s = 0; s < lat.NumStates(); ++s) os << ' ' << lat.Frame(s);
    os << "\n\n";
  }
}

void WriteLattices(const std::vector<std::pair<std::string, Lattice>> &lats,
                   const std::string &path) {
  AtomicWriteFile(path, [&lats](std::ostream &os) { WriteLattices(lats, os); });
}

std::vector<std::pair<std::string, Lattice>> ReadLattices(std::istream &is) {
  std::vector<std::pair<std::string, Lattice>> out;
  std::string line;
  size_t line_no = 0;
  auto fail = [&line_no](const std::string &msg) {
    return Error("BadLattice", "line " + std::to_string(line_no) + ": " + msg);
  };
  auto words = std::make_shared<SymbolTable>();
  struct PendingArc {
    int64_t src, dst;
    LatticeArc arc;
  };
  while (std::getline(is, line)) {
    ++line_no;
    auto head = SplitWhitespace(line);
    if (head.empty()) continue;
    if (head.size() != 1) throw fail("expected an utterance id");
    std::string id = head[0];
    std::vector<PendingArc> arcs;
    std::vector<std::pair<int64_t, std::pair<double, double>>> finals;
    std::vector<int32_t> frames;
    bool have_frames = false;
    while (std::getline(is, line)) {
      ++line_no;
      auto f = SplitWhitespace(line);
      if (f.empty()) break;
      if (f[0] == "frames") {
        for (size_t i = 1; i < f.size(); ++i) {
          int64_t fr;
          if (!ParseInt(f[i], &fr) || fr < 0) throw fail("bad frame index");
          frames.push_back(static_cast<int32_t>(fr));
        }
        have_frames = true;
      } else if (f.size() == 4) {
        PendingArc p;
        if (!ParseInt(f[0], &p.src) || !ParseInt(f[1], &p.dst) ||
            !ParsePair(f[3], &p.arc.am, &p.arc.lm))
          throw fail("malformed arc");
        p.arc.word = f[2] == SymbolTable::kEpsilonSymbol ? kEpsilon : words->AddSymbol(f[2]);
        arcs.push_back(p);
      } else if (f.size() == 2) {
        int64_t s;
        double am, lm;
        if (!ParseInt(f[0], &s) || !ParsePair(f[1], &am, &lm))
          throw fail("malformed final line");
        finals.push_back({s, {am, lm}});
      } else {
        throw fail("expected 'src dst word am,lm', 'state am,lm' or 'frames ...'");
      }
    }
    if (!have_frames) throw fail("lattice '" + id + "' lacks a frames line");
    Lattice lat;
    for (int32_t fr : frames) lat.AddState(fr);
    const int64_t n = lat.NumStates();
    for (const auto &p : arcs) {
      if (p.src < 0 || p.src >= n || p.dst < 0 || p.dst >= n)
        throw fail("arc state out of range in lattice '" + id + "'");
      LatticeArc a = p.arc;
      a.nextstate = static_cast<int32_t>(p.dst);
      lat.AddArc(static_cast<int32_t>(p.src), a);
    }
    for (const auto &[s, w] : finals) {
      if (s < 0 || s >= n) throw fail("final state out of range in lattice '" + id + "'");
      lat.SetFinal(static_cast<int32_t>(s), w.first, w.second);
    }
    lat.SetWords(words);
    lat.Validate();
    out.emplace_back(std::move(id), std::move(lat));
  }
  return out;
}

std::vector<std::pair<std::string, Lattice>> ReadLattices(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return ReadLattices(is);
}

}  // namespace hasr
