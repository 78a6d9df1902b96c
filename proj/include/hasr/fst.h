// include/hasr/fst.h

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

#ifndef HASR_FST_H_
#define HASR_FST_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace hasr {

using Label = int32_t;
using StateId = int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr StateId kNoState = -1;

/// Tropical semiring over -log weights: Plus is min, Times is +.
struct Tropical {
  static constexpr double Zero() { return std::numeric_limits<double>::infinity(); }
  static constexpr double One() { return 0.0; }
  static double Plus(double a, double b) { return a < b ? a : b; }
  static double Times(double a, double b) { return a + b; }
  static bool IsZero(double w) { return w == Zero(); }
};

/// Bidirectional symbol <-> id map. Id 0 is always "<eps>".
class SymbolTable {
 public:
  static constexpr const char *kEpsilonSymbol = "<eps>";

  SymbolTable();

  Label AddSymbol(const std::string &sym);
  /// Returns -1 if the symbol is absent.
  Label Find(const std::string &sym) const;
  const std::string &Symbol(Label id) const { return symbols_.at(id); }
  size_t Size() const { return symbols_.size(); }
  const std::vector<std::string> &symbols() const { return symbols_; }

  bool operator==(const SymbolTable &other) const {
    return symbols_ == other.symbols_;
  }

  /// "symbol id" per line.
  void Write(std::ostream &os) const;
  void Write(const std::string &path) const;
  static SymbolTable Read(std::istream &is);
  static SymbolTable Read(const std::string &path);

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> ids_;
};

struct Arc {
  Label ilabel;
  Label olabel;
  double weight;
  StateId nextstate;
};

/// Mutable weighted transducer with dense state ids. Final weight
/// Tropical::Zero() marks a non-final state.
class WeightedFst {
 public:
  StateId AddState();
  void SetStart(StateId s) { start_ = s; }
  void SetFinal(StateId s, double weight) { states_.at(s).final_weight = weight; }
  void AddArc(StateId s, const Arc &arc) { states_.at(s).arcs.push_back(arc); }
  void ReserveStates(size_t n) { states_.reserve(n); }

  StateId Start() const { return start_; }
  double Final(StateId s) const { return states_[s].final_weight; }
  bool IsFinal(StateId s) const { return !Tropical::IsZero(states_[s].final_weight); }
  const std::vector<Arc> &Arcs(StateId s) const { return states_[s].arcs; }
  std::vector<Arc> &MutableArcs(StateId s) { return states_[s].arcs; }
  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  size_t NumArcs() const;

  const std::shared_ptr<const SymbolTable> &InputSymbols() const { return isyms_; }
  const std::shared_ptr<const SymbolTable> &OutputSymbols() const { return osyms_; }
  void SetInputSymbols(std::shared_ptr<const SymbolTable> s) { isyms_ = std::move(s); }
  void SetOutputSymbols(std::shared_ptr<const SymbolTable> s) { osyms_ = std::move(s); }

  /// Largest input label on any arc (0 if none).
  Label MaxInputLabel() const;

  /// Throws Error("BadFst") if the start state or an arc target is invalid.
  void Validate() const;

 private:
  struct State {
    std::vector<Arc> arcs;
    double final_weight = Tropical::Zero();
  };
  std::vector<State> states_;
  StateId start_ = kNoState;
  std::shared_ptr<const SymbolTable> isyms_;
  std::shared_ptr<const SymbolTable> osyms_;
};

/// Text form: one arc per line "src dst ilabel olabel weight" and final
/// states as "state weight". Arcs and the final line of the start state
/// come first, so the first field of the file is the start state.
void WriteFstText(const WeightedFst &fst, std::ostream &os);
void WriteFstText(const WeightedFst &fst, const std::string &path);
WeightedFst ReadFstText(std::istream &is);
WeightedFst ReadFstText(const std::string &path);

}  // namespace hasr

#endif  // HASR_FST_H_
