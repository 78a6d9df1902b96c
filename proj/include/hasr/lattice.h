// include/hasr/lattice.h

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

#ifndef HASR_LATTICE_H_
#define HASR_LATTICE_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hasr/fst.h"

namespace hasr {

struct LatticeArc {
  Label word;  // kEpsilon for non-word arcs
  double am;   // acoustic cost, -acoustic_scale * score
  double lm;   // graph cost
  int32_t nextstate;
};

/// Acyclic word lattice. State 0 is the start, arcs always point to a
/// higher state id, and state frame indices never decrease along arcs.
class Lattice {
 public:
  int32_t AddState(int32_t frame);
  void AddArc(int32_t s, const LatticeArc &arc) { arcs_.at(s).push_back(arc); }
  void SetFinal(int32_t s, double am, double lm) { finals_.at(s) = {am, lm}; }

  int32_t NumStates() const { return static_cast<int32_t>(arcs_.size()); }
  const std::vector<LatticeArc> &Arcs(int32_t s) const { return arcs_[s]; }
  int32_t Frame(int32_t s) const { return frames_[s]; }
  bool IsFinal(int32_t s) const { return finals_[s].first != kNotFinal; }
  /// (am, lm) final cost pair.
  const std::pair<double, double> &Final(int32_t s) const { return finals_[s]; }

  const std::shared_ptr<const SymbolTable> &Words() const { return words_; }
  void SetWords(std::shared_ptr<const SymbolTable> w) { words_ = std::move(w); }
  /// Word string for a label; numeric if there is no symbol table.
  std::string WordString(Label l) const;

  /// Throws Error("BadLattice") if the structural invariants do not hold.
  void Validate() const;

  static constexpr double kNotFinal = std::numeric_limits<double>::infinity();

 private:
  std::vector<std::vector<LatticeArc>> arcs_;
  std::vector<int32_t> frames_;
  std::vector<std::pair<double, double>> finals_;
  std::shared_ptr<const SymbolTable> words_;
};

/// Lowest total (am + lm) cost of a complete path; infinity if none.
double LatticeBestCost(const Lattice &lat);

/// Text form per utterance:
///   utt-id
///   src dst word am,lm      (one line per arc, words as strings)
///   state am,lm             (one line per final state)
///   frames f0 f1 ...        (frame index of every state)
///   <blank line>
void WriteLattices(const std::vector<std::pair<std::string, Lattice>> &lats,
                   std::ostream &os);
void WriteLattices(const std::vector<std::pair<std::string, Lattice>> &lats,
                   const std::string &path);
/// Throws Error("BadLattice") with the line number on malformed input.
std::vector<std::pair<std::string, Lattice>> ReadLattices(std::istream &is);
std::vector<std::pair<std::string, Lattice>> ReadLattices(const std::string &path);

}  // namespace hasr

#endif  // HASR_LATTICE_H_
