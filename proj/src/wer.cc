// src/wer.cc

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

#include "hasr/wer.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "hasr/error.h"
#include "hasr/util/text-utils.h"

namespace hasr {

const char *EditOpName(EditOp op) {
  switch (op) {
    case EditOp::kOk: return "ok";
    case EditOp::kSub: return "sub";
    case EditOp::kDel: return "del";
    case EditOp::kIns: return "ins";
  }
  return "ok";
}

std::vector<AlignedPair> Align(const std::vector<std::string> &ref,
                               const std::vector<std::string> &hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<int32_t>> d(n + 1, std::vector<int32_t>(m + 1));
  for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int32_t>(i);
  for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int32_t>(j);
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1),
                          d[i - 1][j] + 1, d[i][j - 1] + 1});
  std::vector<AlignedPair> out;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (d[i][j] == d[i - 1][j - 1] + (same ? 0 : 1)) {
        out.push_back({ref[i - 1], hyp[j - 1], same ? EditOp::kOk : EditOp::kSub});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      out.push_back({ref[i - 1], "", EditOp::kDel});
      --i;
    } else {
      out.push_back({"", hyp[j - 1], EditOp::kIns});
      --j;
    }
  }
  return {out.rbegin(), out.rend()};
}

EditCounts &EditCounts::operator+=(const EditCounts &o) {
  sub += o.sub;
  del += o.del;
  ins += o.ins;
  ref_len += o.ref_len;
  return *this;
}

EditCounts ScoreAlignment(std::vector<AlignedPair> *alignment, bool lenient_apostrophe,
                          const NormalizationRules &rules) {
  EditCounts c;
  for (auto &p : *alignment) {
    if (p.op == EditOp::kSub && lenient_apostrophe) {
      std::string r, h;
      try {
        r = StripEdgeApostrophes(p.ref, rules);
        h = StripEdgeApostrophes(p.hyp, rules);
      } catch (const Error &) {
        // A word made only of apostrophes strips to nothing; not forgiven.
      }
      if (!r.empty() && r == h) p.op = EditOp::kOk;
    }
    switch (p.op) {
      case EditOp::kOk: ++c.ref_len; break;
      case EditOp::kSub: ++c.sub; ++c.ref_len; break;
      case EditOp::kDel: ++c.del; ++c.ref_len; break;
      case EditOp::kIns: ++c.ins; break;
    }
  }
  return c;
}

double EvalReport::Wer() const {
  if (totals.ref_len == 0)
    throw Error("EmptyReference", "references contain no words");
  return static_cast<double>(totals.Errors()) / static_cast<double>(totals.ref_len);
}

void EvalReport::WriteSummary(std::ostream &os) const {
  const double wer = 100.0 * Wer();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%%WER %.2f [ %lld / %lld, %lld ins, %lld del, %lld sub ]",
                wer, static_cast<long long>(totals.Errors()),
                static_cast<long long>(totals.ref_len), static_cast<long long>(totals.ins),
                static_cast<long long>(totals.del), static_cast<long long>(totals.sub));
  os << buf << '\n';
  std::snprintf(buf, sizeof(buf), "WER %.2f%%", wer);
  os << buf << '\n';
}

void EvalReport::WriteTsv(std::ostream &os) const {
  os << "utt_id\tsub\tdel\tins\tref_len\n";
  for (const auto &u : utterances)
    os << u.id << '\t' << u.counts.sub << '\t' << u.counts.del << '\t' << u.counts.ins
       << '\t' << u.counts.ref_len << '\n';
}

UtteranceScore ScoreUtterance(const std::string &id, const std::vector<std::string> &ref,
                              const std::vector<std::string> &hyp, bool lenient_apostrophe) {
  UtteranceScore u{id, {}, Align(ref, hyp)};
  u.counts = ScoreAlignment(&u.alignment, lenient_apostrophe);
  return u;
}

EvalReport ComputeWer(const std::vector<CorpusLine> &refs,
                      const std::vector<CorpusLine> &hyps, bool lenient_apostrophe) {
  std::unordered_map<std::string, const CorpusLine *> hyp_by_id;
  for (const auto &h : hyps) hyp_by_id[h.id] = &h;
  std::unordered_set<std::string> ref_ids;
  for (const auto &r : refs) ref_ids.insert(r.id);
  for (const auto &h : hyps)
    if (!ref_ids.count(h.id))
      throw Error("MissingReference", "hypothesis '" + h.id + "' has no reference");
  EvalReport report;
  for (const auto &r : refs) {
    auto it = hyp_by_id.find(r.id);
    std::vector<std::string> hyp =
        it == hyp_by_id.end() ? std::vector<std::string>{} : SplitWhitespace(it->second->text);
    report.utterances.push_back(
        ScoreUtterance(r.id, SplitWhitespace(r.text), hyp, lenient_apostrophe));
    report.totals += report.utterances.back().counts;
  }
  return report;
}

}  // namespace hasr
