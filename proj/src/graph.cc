// src/graph.cc

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

#include "hasr/graph.h"

#include <cmath>
#include <fstream>
#include <set>

#include <spdlog/spdlog.h>

#include "hasr/error.h"
#include "hasr/fst-algo.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"
#include "hasr/util/utf8.h"

namespace hasr {

namespace {

const double kLn10 = std::log(10.0);

double Log10ToCost(double log10_p) { return -log10_p * kLn10; }

}  // namespace

WeightedFst GrammarFst(const BackoffNGramLM &lm) {
  auto words = std::make_shared<SymbolTable>();
  std::vector<Label> word_label(lm.VocabSize(), kEpsilon);
  for (WordId w = 0; w < static_cast<WordId>(lm.VocabSize()); ++w)
    if (w != lm.bos() && w != lm.eos()) word_label[w] = words->AddSymbol(lm.Word(w));

  WeightedFst G;
  G.SetInputSymbols(words);
  G.SetOutputSymbols(words);

  std::map<std::vector<WordId>, StateId> state_of;
  state_of.emplace(std::vector<WordId>{}, kNoState);
  for (const auto &ctx : lm.Contexts()) state_of.emplace(ctx, kNoState);
  for (int n = 2; n <= lm.order(); ++n)
    for (const auto &[key, e] : lm.Table(n))
      state_of.emplace(std::vector<WordId>(key.begin(), key.end() - 1), kNoState);
  for (auto &[h, s] : state_of) s = G.AddState();

  const size_t max_ctx = static_cast<size_t>(lm.order() - 1);
  auto longest_state = [&](const std::vector<WordId> &h) {
    size_t skip = h.size() > max_ctx ? h.size() - max_ctx : 0;
    for (;; ++skip) {
      auto it = state_of.find(std::vector<WordId>(h.begin() + skip, h.end()));
      if (it != state_of.end()) return it->second;
    }
  };
  G.SetStart(longest_state({lm.bos()}));

  // Explicit continuations grouped by context.
  std::map<std::vector<WordId>, std::vector<std::pair<WordId, double>>> successors;
  for (int n = 1; n <= lm.order(); ++n)
    for (const auto &key : lm.SortedKeys(n)) {
      std::vector<WordId> h(key.begin(), key.end() - 1);
      if (!state_of.count(h)) continue;
      successors[h].emplace_back(key.back(), lm.Table(n).at(key).log10_prob);
    }

  for (const auto &[h, s] : state_of) {
    for (const auto &[w, lp] : successors[h]) {
      if (w == lm.bos() || lp <= kLog10Zero) continue;
      if (w == lm.eos()) {
        G.SetFinal(s, Log10ToCost(lp));
        continue;
      }
      std::vector<WordId> next = h;
      next.push_back(w);
      G.AddArc(s, Arc{word_label[w], word_label[w], Log10ToCost(lp),
                      longest_state(next)});
    }
    if (!h.empty()) {
      const NGramEntry *e = lm.Find(h);
      double bow = e ? e->log10_backoff : 0.0;
      G.AddArc(s, Arc{kEpsilon, kEpsilon, Log10ToCost(bow),
                      longest_state(std::vector<WordId>(h.begin() + 1, h.end()))});
    }
  }
  return G;
}

void Lexicon::Write(const std::string &path) const {
  AtomicWriteFile(path, [this](std::ostream &os) {
    for (const auto &[word, units] : entries) os << word << ' ' << Join(units, " ") << '\n';
  });
}

Lexicon Lexicon::Read(const std::string &path) {
  Lexicon lex;
  size_t line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() < 2)
      throw Error("EmptyPron", path + ":" + std::to_string(line_no) + ": word '" +
                                   f[0] + "' has no units");
    lex.entries.emplace_back(f[0], std::vector<std::string>(f.begin() + 1, f.end()));
  }
  return lex;
}

bool IsSpecialToken(const std::string &word) {
  return word.size() >= 2 && word.front() == '<' && word.back() == '>';
}

Lexicon GraphemeLexicon(const std::vector<std::string> &words) {
  Lexicon lex;
  for (const auto &w : words)
    if (!IsSpecialToken(w) && !w.empty()) lex.entries.emplace_back(w, SplitCodepoints(w));
  return lex;
}

Lexicon SubwordLexicon(const std::vector<std::string> &words,
                       const SubwordModel &acoustic_model,
                       const std::string &lm_boundary) {
  Lexicon lex;
  for (const auto &w : words) {
    if (IsSpecialToken(w) || w.empty()) continue;
    if (lm_boundary.empty()) {
      lex.entries.emplace_back(w, acoustic_model.EncodeWord(w, true));
    } else if (w.compare(0, lm_boundary.size(), lm_boundary) == 0) {
      std::string bare = w.substr(lm_boundary.size());
      if (bare.empty()) continue;
      lex.entries.emplace_back(w, acoustic_model.EncodeWord(bare, true));
    } else {
      lex.entries.emplace_back(w, acoustic_model.EncodeWord(w, false));
    }
  }
  return lex;
}

WeightedFst LexiconFst(const Lexicon &lexicon,
                       std::shared_ptr<const SymbolTable> words,
                       const LexiconOptions &opts) {
  auto out_syms = words ? std::make_shared<SymbolTable>(*words)
                        : std::make_shared<SymbolTable>();
  std::set<std::string> unit_set;
  for (const auto &[word, units] : lexicon.entries) {
    if (units.empty())
      throw Error("EmptyPron", "word '" + word + "' has an empty pronunciation");
    unit_set.insert(units.begin(), units.end());
  }
  if (!opts.silence_unit.empty()) unit_set.insert(opts.silence_unit);
  auto in_syms = std::make_shared<SymbolTable>();
  for (const auto &u : unit_set) in_syms->AddSymbol(u);

  WeightedFst L;
  L.SetInputSymbols(in_syms);
  const StateId loop = L.AddState();
  L.SetStart(loop);
  L.SetFinal(loop, 0.0);
  for (const auto &[word, units] : lexicon.entries) {
    Label olabel = out_syms->AddSymbol(word);
    StateId cur = loop;
    for (size_t i = 0; i < units.size(); ++i) {
      StateId next = (i + 1 == units.size()) ? loop : L.AddState();
      L.AddArc(cur, Arc{in_syms->Find(units[i]), i == 0 ? olabel : kEpsilon, 0.0, next});
      cur = next;
    }
  }
  if (!opts.silence_unit.empty())
    L.AddArc(loop, Arc{in_syms->Find(opts.silence_unit), kEpsilon, opts.silence_cost, loop});
  L.SetOutputSymbols(out_syms);
  return L;
}

BiphoneCounts CountBiphones(const std::vector<std::vector<std::string>> &units) {
  BiphoneCounts counts;
  for (const auto &seq : units) {
    std::string left = kNoLeftContext;
    for (const auto &u : seq) {
      ++counts[{left, u}];
      left = u;
    }
  }
  return counts;
}

int32_t BiphoneTying::Fallback(const std::string &unit) const {
  auto it = fallback_.find(unit);
  if (it == fallback_.end())
    throw Error("UnknownUnit", "unit '" + unit + "' has no tied class");
  return it->second;
}

int32_t BiphoneTying::Class(const std::string &left, const std::string &unit) const {
  auto it = biphones_.find({left, unit});
  return it != biphones_.end() ? it->second : Fallback(unit);
}

std::shared_ptr<SymbolTable> BiphoneTying::ClassSymbols() const {
  auto syms = std::make_shared<SymbolTable>();
  for (int32_t c = 0; c < num_classes_; ++c) syms->AddSymbol("c" + std::to_string(c));
  return syms;
}

BiphoneTying ClusterBiphones(const BiphoneCounts &counts, int64_t threshold,
                             const std::vector<std::string> &extra_units) {
  std::set<std::string> units(extra_units.begin(), extra_units.end());
  for (const auto &[key, c] : counts) {
    units.insert(key.second);
    if (key.first != kNoLeftContext) units.insert(key.first);
  }
  BiphoneTying tying;
  tying.units_.assign(units.begin(), units.end());
  for (const auto &u : tying.units_) tying.fallback_[u] = tying.num_classes_++;
  for (const auto &[key, c] : counts)
    if (c >= threshold) tying.biphones_[key] = tying.num_classes_++;
  return tying;
}

void BiphoneTying::Write(const std::string &path) const {
  AtomicWriteFile(path, [this](std::ostream &os) {
    os << "tying " << num_classes_ << ' ' << units_.size() << ' ' << biphones_.size()
       << '\n';
    for (const auto &u : units_) os << "fallback " << u << ' ' << fallback_.at(u) << '\n';
    for (const auto &[key, c] : biphones_)
      os << "biphone " << key.first << ' ' << key.second << ' ' << c << '\n';
  });
}

BiphoneTying ReadTying(std::istream &is) {
  BiphoneTying tying;
  std::string line;
  auto fail = [](const std::string &msg) { return Error("BadTying", msg); };
  if (!std::getline(is, line)) throw fail("empty tying file");
  auto h = SplitWhitespace(line);
  int64_t nc, nu, nb;
  if (h.size() != 4 || h[0] != "tying" || !ParseInt(h[1], &nc) || !ParseInt(h[2], &nu) ||
      !ParseInt(h[3], &nb))
    throw fail("bad header '" + line + "'");
  tying.num_classes_ = static_cast<int32_t>(nc);
  for (int64_t i = 0; i < nu + nb; ++i) {
    if (!std::getline(is, line)) throw fail("truncated tying file");
    auto f = SplitWhitespace(line);
    int64_t c;
    if (i < nu) {
      if (f.size() != 3 || f[0] != "fallback" || !ParseInt(f[2], &c))
        throw fail("bad fallback line '" + line + "'");
      tying.units_.push_back(f[1]);
      tying.fallback_[f[1]] = static_cast<int32_t>(c);
    } else {
      if (f.size() != 4 || f[0] != "biphone" || !ParseInt(f[3], &c))
        throw fail("bad biphone line '" + line + "'");
      tying.biphones_[{f[1], f[2]}] = static_cast<int32_t>(c);
    }
    if (c < 0 || c >= nc) throw fail("class id out of range in '" + line + "'");
  }
  return tying;
}

BiphoneTying BiphoneTying::Read(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return ReadTying(is);
}

WeightedFst ContextFst(const BiphoneTying &tying,
                       std::shared_ptr<const SymbolTable> units) {
  WeightedFst C;
  C.SetInputSymbols(tying.ClassSymbols());
  C.SetOutputSymbols(units);
  const Label num_units = static_cast<Label>(units->Size()) - 1;
  // State 0: no left context; state u: left context is unit label u.
  for (Label u = 0; u <= num_units; ++u) {
    StateId s = C.AddState();
    C.SetFinal(s, 0.0);
  }
  C.SetStart(0);
  for (Label l = 0; l <= num_units; ++l) {
    const std::string left = l == 0 ? std::string(kNoLeftContext) : units->Symbol(l);
    for (Label u = 1; u <= num_units; ++u) {
      int32_t cls = tying.Class(left, units->Symbol(u));
      C.AddArc(l, Arc{cls + 1, u, 0.0, u});
    }
  }
  return C;
}

WeightedFst TopologyFst(int32_t num_classes) {
  WeightedFst H;
  auto syms = std::make_shared<SymbolTable>();
  for (int32_t c = 0; c < num_classes; ++c) syms->AddSymbol("c" + std::to_string(c));
  H.SetInputSymbols(syms);
  H.SetOutputSymbols(syms);
  const StateId hub = H.AddState();
  H.SetStart(hub);
  H.SetFinal(hub, 0.0);
  for (int32_t c = 0; c < num_classes; ++c) {
    const Label l = c + 1;
    StateId s = H.AddState();
    H.AddArc(hub, Arc{l, l, 0.0, s});
    H.AddArc(s, Arc{l, kEpsilon, 0.0, s});
    H.AddArc(s, Arc{kEpsilon, kEpsilon, 0.0, hub});
  }
  return H;
}

WeightedFst BuildDecodingGraph(const WeightedFst &H, const WeightedFst &C,
                               const WeightedFst &L, const WeightedFst &G,
                               const GraphOptions &opts) {
  WeightedFst LG = Connect(Compose(L, G));
  if (opts.determinize) {
    try {
      LG = Connect(Determinize(LG, opts.max_state_factor));
    } catch (const Error &e) {
      if (e.code() != "DeterminizeBlowup") throw;
      spdlog::warn("L o G is not determinizable within budget; keeping it as is");
    }
  }
  spdlog::debug("LG: {} states, {} arcs", LG.NumStates(), LG.NumArcs());
  WeightedFst CLG = Connect(Compose(C, LG));
  WeightedFst HCLG = Connect(RemoveEpsilon(Compose(H, CLG)));
  if (opts.determinize) {
    try {
      HCLG = Connect(Determinize(HCLG, opts.max_state_factor));
    } catch (const Error &e) {
      if (e.code() != "DeterminizeBlowup") throw;
      spdlog::warn("HCLG is not determinizable within budget; keeping it as is");
    }
  }
  // A graph without arcs cannot consume a single frame.
  if (HCLG.NumStates() == 0 || HCLG.NumArcs() == 0)
    throw Error("EmptyGraph",
                "decoding graph accepts no frames; check that lexicon words match "
                "the grammar vocabulary");
  spdlog::debug("HCLG: {} states, {} arcs", HCLG.NumStates(), HCLG.NumArcs());
  return HCLG;
}

}  // namespace hasr
