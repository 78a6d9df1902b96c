// tools/cli.cc

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

#include "cli.h"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "hasr/augment.h"
#include "hasr/decoder.h"
#include "hasr/error.h"
#include "hasr/fst-algo.h"
#include "hasr/graph.h"
#include "hasr/lattice.h"
#include "hasr/manifest.h"
#include "hasr/nbest.h"
#include "hasr/ngram.h"
#include "hasr/parallel.h"
#include "hasr/posteriorgram.h"
#include "hasr/rescore.h"
#include "hasr/rnnlm.h"
#include "hasr/segment.h"
#include "hasr/subword.h"
#include "hasr/textnorm.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"
#include "hasr/wave.h"
#include "hasr/wer.h"

namespace hasr {
namespace cli {

namespace fs = std::filesystem;

namespace {

const std::vector<OperationOwner> kCommandTable = {
    {"textnorm", "normalize_text", "normalize"},
    {"textnorm", "strip_edge_apostrophes", "score"},
    {"subword", "train_bpe", "train-bpe"},
    {"subword", "encode", "encode"},
    {"subword", "decode", "encode"},
    {"ngram", "train_ngram", "train-lm"},
    {"ngram", "export_arpa", "train-lm"},
    {"ngram", "score_sequence", "ppl"},
    {"ngram", "perplexity", "ppl"},
    {"ngram", "import_arpa", "ppl"},
    {"ngram", "interpolate", "interpolate-lm"},
    {"fst", "grammar_fst", "build-graph"},
    {"fst", "lexicon_fst", "build-graph"},
    {"fst", "cluster_biphones", "build-graph"},
    {"fst", "context_fst", "build-graph"},
    {"fst", "topology_fst", "build-graph"},
    {"fst", "compose", "build-graph"},
    {"fst", "determinize", "build-graph"},
    {"fst", "rm_epsilon", "build-graph"},
    {"fst", "connect", "build-graph"},
    {"fst", "build_decoding_graph", "build-graph"},
    {"decode", "read_posteriorgram", "decode"},
    {"decode", "write_posteriorgram", "decode"},
    {"decode", "decode", "decode"},
    {"pipeline", "chunk_stream", "decode"},
    {"rescore", "nbest", "nbest"},
    {"rescore", "train_rnnlm", "train-rnnlm"},
    {"rescore", "rescore_nbest", "rescore"},
    {"pipeline", "derive_segments", "segment"},
    {"pipeline", "make_pseudo_manifest", "pseudo-manifest"},
    {"pipeline", "augment_noise", "augment"},
    {"eval", "align", "score"},
    {"eval", "compute_wer", "score"},
};

struct SubcommandInfo {
  const char *name;
  const char *section;
  const char *help;
};

const SubcommandInfo kSubcommands[] = {
    {"normalize", "textnorm", "Normalize raw text with the orthographic rules"},
    {"train-bpe", "subword", "Train a BPE subword model"},
    {"encode", "subword", "Split words into subword units, or join them back"},
    {"train-lm", "ngram", "Train a Kneser-Ney n-gram LM and write it as ARPA"},
    {"ppl", "ngram", "Score a corpus with an ARPA LM"},
    {"interpolate-lm", "ngram", "Linearly interpolate two ARPA LMs"},
    {"build-graph", "fst", "Build the HCLG decoding graph"},
    {"decode", "decode", "Beam-search decode posteriorgrams"},
    {"nbest", "rescore", "Extract n-best lists from lattices"},
    {"train-rnnlm", "rescore", "Train a recurrent LM for rescoring"},
    {"rescore", "rescore", "Rescore n-best lists with a new LM"},
    {"segment", "pipeline", "Derive 5-30 s segments from chunked decodes"},
    {"pseudo-manifest", "pipeline", "Write a pseudo-label manifest for segments"},
    {"augment", "pipeline", "Add noisy copies of manifest audio"},
    {"score", "eval", "Compute WER"},
};

std::vector<std::vector<std::string>> Tokens(const std::vector<CorpusLine> &lines) {
  std::vector<std::vector<std::string>> out;
  out.reserve(lines.size());
  for (const auto &l : lines) out.push_back(SplitWhitespace(l.text));
  return out;
}

std::vector<double> ParseDoubleList(const std::string &s, const std::string &what) {
  std::vector<double> out;
  for (const auto &f : Split(s, ',')) {
    double v;
    if (!ParseDouble(std::string(Trim(f)), &v))
      throw Error("BadConfig", "bad value '" + f + "' in " + what);
    out.push_back(v);
  }
  return out;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

class Tool {
 public:
  explicit Tool(std::ostream &out);

  CLI::App &app() { return app_; }
  void CheckInputs(const std::string &sub) const;
  void Dispatch(const std::string &sub) { handlers_.at(sub)(); }
  const std::string &log_level() const { return log_level_; }

 private:
  CLI::App *AddSub(const SubcommandInfo &info);
  void Input(CLI::App *sub, const std::string &flag, std::string *var,
             const std::string &help, bool required = true);
  CLI::Option *Output(CLI::App *sub, const std::string &flag, std::string *var,
                      const std::string &help, bool required = true);
  void AddWorkers(CLI::App *sub) {
    sub->add_option("--workers", workers_, "Worker threads (0 = all)");
  }

  void Normalize();
  void TrainBpe();
  void Encode();
  void TrainLm();
  void Ppl();
  void InterpolateLm();
  void BuildGraph();
  void DecodeCmd();
  void NBestCmd();
  void TrainRnnLmCmd();
  void RescoreCmd();
  void SegmentCmd();
  void PseudoManifest();
  void AugmentCmd();
  void Score();

  std::ostream &out_;
  CLI::App app_;
  std::map<std::string, std::function<void()>> handlers_;
  std::map<std::string, std::vector<std::pair<std::string, const std::string *>>> inputs_;

  std::string config_path_, log_level_ = "info";
  int workers_ = 1;

  // Shared path options; only the active subcommand's values are set.
  std::string input_, output_, model_, lm_, rules_;
  std::string lm_b_, graph_dir_, posteriors_, lattices_, timings_, write_pgs_;
  std::string nbest_path_, rnnlm_path_, hyp_output_, segments_, source_paths_, merge_;
  std::string manifest_, noise_list_, output_dir_, ref_, hyp_, tsv_, alignments_;
  std::string heldout_, lexicon_, train_text_, unit_model_, lm_subword_model_;

  bool reverse_ = false;
  std::string boundary_ = SubwordModel::kDefaultBoundary;
  int64_t vocab_size_ = 0;
  int order_ = 3;
  double discount_ = 0.75;
  double lambda_ = 0.5;
  std::string units_mode_ = "grapheme";
  std::string lm_boundary_;
  int64_t tying_threshold_ = kMonophoneThreshold;
  std::string silence_unit_;
  double silence_cost_ = 0.0;
  bool no_determinize_ = false;
  double max_state_factor_ = 100.0;
  DecodeConfig decode_cfg_;
  double chunk_seconds_ = 0.0;
  bool binary_pgs_ = false;
  int64_t n_ = 100;
  RnnTrainOptions rnn_opts_;
  double heldout_fraction_ = 0.1;
  double lm_scale_ = 1.0;
  SegmentOptions seg_opts_;
  int32_t copies_ = 3;
  std::string snrs_ = "20,15,10,5";
  uint64_t seed_ = 0;
  bool lenient_ = false;
};

Tool::Tool(std::ostream &out)
    : out_(out), app_("Hybrid ASR decoding and language-modeling toolkit", "hasr") {
  app_.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app_.require_subcommand(1);
  app_.set_version_flag("--version",
                        std::string("hasr ") + kToolkitVersion +
                            "\nformats: bpe 1, arpa 1, fst-text 1, posteriorgram 1, "
                            "lattice 1, nbest 1, rnnlm " +
                            std::to_string(RnnLm::kFormatVersion) + ", manifest 1");
  app_.add_option("--config", config_path_,
                  "INI file with one section per module; flags take precedence");
  app_.add_option("--log-level", log_level_, "trace, debug, info, warn, error or off");

  CLI::App *s;
  s = AddSub(kSubcommands[0]);
  Input(s, "--input", &input_, "Corpus, one utterance per line");
  Output(s, "--output", &output_, "Normalized corpus");
  Input(s, "--rules", &rules_, "Normalization rules file", false);
  handlers_["normalize"] = [this] { Normalize(); };

  s = AddSub(kSubcommands[1]);
  Input(s, "--input", &input_, "Normalized training corpus");
  Output(s, "--output", &output_, "Subword model");
  s->add_option("--vocab-size", vocab_size_, "Target inventory size")->required();
  s->add_option("--boundary", boundary_, "Word-initial marker");
  handlers_["train-bpe"] = [this] { TrainBpe(); };

  s = AddSub(kSubcommands[2]);
  Input(s, "--model", &model_, "Subword model");
  Input(s, "--input", &input_, "Corpus of words (or units with --reverse)");
  Output(s, "--output", &output_, "Encoded corpus");
  s->add_flag("--reverse", reverse_, "Join units back into words");
  handlers_["encode"] = [this] { Encode(); };

  s = AddSub(kSubcommands[3]);
  Input(s, "--input", &input_, "Training corpus of tokens");
  Output(s, "--output", &output_, "ARPA file");
  s->add_option("--order", order_, "N-gram order (1-6)");
  s->add_option("--discount", discount_, "Kneser-Ney discount in (0, 1)");
  handlers_["train-lm"] = [this] { TrainLm(); };

  s = AddSub(kSubcommands[4]);
  Input(s, "--lm", &lm_, "ARPA file");
  Input(s, "--input", &input_, "Corpus to score");
  handlers_["ppl"] = [this] { Ppl(); };

  s = AddSub(kSubcommands[5]);
  Input(s, "--lm", &lm_, "First ARPA file (weight lambda)");
  Input(s, "--lm-b", &lm_b_, "Second ARPA file (weight 1 - lambda)");
  Output(s, "--output", &output_, "Interpolated ARPA file");
  s->add_option("--lambda", lambda_, "Weight of the first LM")->required();
  handlers_["interpolate-lm"] = [this] { InterpolateLm(); };

  s = AddSub(kSubcommands[6]);
  Input(s, "--lm", &lm_, "Grammar LM (ARPA)");
  Output(s, "--output-dir", &output_dir_, "Directory for the graph files");
  s->add_option("--units", units_mode_, "grapheme or bpe")
      ->check(CLI::IsMember({"grapheme", "bpe"}));
  Input(s, "--unit-model", &unit_model_, "Acoustic BPE model (with --units bpe)", false);
  s->add_option("--lm-boundary", lm_boundary_,
                "Marker of word-initial LM tokens when the LM is over subwords");
  Input(s, "--lexicon", &lexicon_, "Explicit lexicon, overrides --units", false);
  Input(s, "--train-text", &train_text_, "Transcripts for biphone counts", false);
  s->add_option("--tying-threshold", tying_threshold_,
                "Minimum count for a distinct biphone class (default: monophones)");
  s->add_option("--silence-unit", silence_unit_, "Optional inter-word silence unit");
  s->add_option("--silence-cost", silence_cost_, "Graph cost of one silence unit");
  s->add_flag("--no-determinize", no_determinize_, "Skip determinization");
  s->add_option("--max-state-factor", max_state_factor_, "Determinization state budget");
  handlers_["build-graph"] = [this] { BuildGraph(); };

  s = AddSub(kSubcommands[7]);
  Input(s, "--graph-dir", &graph_dir_, "Directory written by build-graph");
  Input(s, "--posteriors", &posteriors_, "Posteriorgram file (text or binary)");
  Output(s, "--output", &output_, "Hypotheses, one 'utt-id<TAB>words' per line");
  Output(s, "--lattices", &lattices_, "Lattice output", false);
  Output(s, "--timings", &timings_, "Word timings for segment", false);
  Output(s, "--write-posteriors", &write_pgs_, "Copy of the decoded posteriorgrams", false);
  s->add_flag("--binary-posteriors", binary_pgs_, "Binary form for --write-posteriors");
  s->add_option("--beam", decode_cfg_.beam, "Pruning beam");
  s->add_option("--max-active", decode_cfg_.max_active, "Maximum active states");
  s->add_option("--acoustic-scale", decode_cfg_.acoustic_scale, "Acoustic score scale");
  s->add_option("--lattice-beam", decode_cfg_.lattice_beam, "Lattice pruning beam");
  s->add_option("--chunk-seconds", chunk_seconds_,
                "Decode in fixed-length chunks (0 = whole utterances)");
  Input(s, "--lm-subword-model", &lm_subword_model_,
        "Join subword LM tokens into words in the hypotheses", false);
  AddWorkers(s);
  handlers_["decode"] = [this] { DecodeCmd(); };

  s = AddSub(kSubcommands[8]);
  Input(s, "--lattices", &lattices_, "Lattices written by decode");
  Output(s, "--output", &output_, "N-best lists");
  s->add_option("--n", n_, "Entries per utterance");
  handlers_["nbest"] = [this] { NBestCmd(); };

  s = AddSub(kSubcommands[9]);
  Input(s, "--input", &input_, "Training corpus of units");
  Output(s, "--output", &output_, "RNN LM model");
  Input(s, "--heldout", &heldout_, "Held-out corpus (default: split off the input)", false);
  s->add_option("--heldout-fraction", heldout_fraction_,
                "Fraction of the input held out when --heldout is absent");
  s->add_option("--embed-dim", rnn_opts_.embed_dim, "Embedding size");
  s->add_option("--hidden-dim", rnn_opts_.hidden_dim, "LSTM cell count");
  s->add_option("--epochs", rnn_opts_.epochs, "Training epochs");
  s->add_option("--learning-rate", rnn_opts_.learning_rate, "SGD step size");
  s->add_option("--seed", rnn_opts_.seed, "Initialization and shuffling seed");
  s->add_option("--bptt", rnn_opts_.bptt, "Truncated backpropagation length");
  handlers_["train-rnnlm"] = [this] { TrainRnnLmCmd(); };

  s = AddSub(kSubcommands[10]);
  Input(s, "--nbest", &nbest_path_, "N-best lists");
  Input(s, "--lm", &lm_, "New n-gram LM (ARPA)", false);
  Input(s, "--rnnlm", &rnnlm_path_, "New RNN LM", false);
  s->add_option("--lm-scale", lm_scale_, "Scale on the combined LM cost")->required();
  s->add_option("--lambda", lambda_, "Weight of the new LM cost")->required();
  Output(s, "--output", &output_, "Reranked n-best lists (lm_cost = scaled new LM part)");
  Output(s, "--hyp-output", &hyp_output_, "1-best hypotheses", false);
  Input(s, "--lm-subword-model", &lm_subword_model_,
        "Join subword LM tokens into words in --hyp-output", false);
  AddWorkers(s);
  handlers_["rescore"] = [this] { RescoreCmd(); };

  s = AddSub(kSubcommands[11]);
  Input(s, "--timings", &timings_, "Word timings written by decode --chunk-seconds");
  Output(s, "--output", &output_, "Segments TSV");
  s->add_option("--min-dur", seg_opts_.min_dur, "Minimum segment duration (s)");
  s->add_option("--max-dur", seg_opts_.max_dur, "Maximum segment duration (s)");
  s->add_option("--silence-gap", seg_opts_.silence_gap, "Gap that splits segments (s)");
  handlers_["segment"] = [this] { SegmentCmd(); };

  s = AddSub(kSubcommands[12]);
  Input(s, "--segments", &segments_, "Segments TSV");
  Output(s, "--output", &output_, "Manifest TSV");
  Input(s, "--source-paths", &source_paths_, "'source-id<TAB>path' lines", false);
  Input(s, "--merge", &merge_, "Existing manifest to extend", false);
  handlers_["pseudo-manifest"] = [this] { PseudoManifest(); };

  s = AddSub(kSubcommands[13]);
  Input(s, "--manifest", &manifest_, "Manifest whose rows point at WAV files");
  Input(s, "--noise-list", &noise_list_, "Noise WAV paths, one per line");
  Output(s, "--output-dir", &output_dir_, "Directory for noisy WAV files");
  Output(s, "--output", &output_, "Manifest with original and augmented rows");
  s->add_option("--copies", copies_, "Noisy copies per utterance");
  s->add_option("--snrs", snrs_, "Comma-separated SNRs in dB, used round-robin");
  s->add_option("--seed", seed_, "Noise selection seed");
  AddWorkers(s);
  handlers_["augment"] = [this] { AugmentCmd(); };

  s = AddSub(kSubcommands[14]);
  Input(s, "--ref", &ref_, "References, 'utt-id<TAB>words'");
  Input(s, "--hyp", &hyp_, "Hypotheses, 'utt-id<TAB>words'");
  s->add_flag("--lenient-apostrophe", lenient_,
              "Forgive substitutions that differ only in edge apostrophes");
  Output(s, "--tsv", &tsv_, "Per-utterance counts", false);
  Output(s, "--alignments", &alignments_, "Per-utterance alignments", false);
  AddWorkers(s);
  handlers_["score"] = [this] { Score(); };
}

CLI::App *Tool::AddSub(const SubcommandInfo &info) {
  return app_.add_subcommand(info.name, info.help);
}

void Tool::Input(CLI::App *sub, const std::string &flag, std::string *var,
                 const std::string &help, bool required) {
  auto *o = sub->add_option(flag, *var, help);
  if (required) o->required();
  inputs_[sub->get_name()].emplace_back(flag, var);
}

CLI::Option *Tool::Output(CLI::App *sub, const std::string &flag, std::string *var,
                          const std::string &help, bool required) {
  auto *o = sub->add_option(flag, *var, help);
  if (required) o->required();
  return o;
}

void Tool::CheckInputs(const std::string &sub) const {
  auto it = inputs_.find(sub);
  if (it == inputs_.end()) return;
  for (const auto &[flag, var] : it->second)
    if (!var->empty() && !fs::exists(*var))
      throw Error("MissingPath", flag + " " + *var + " does not exist");
}

void Tool::Normalize() {
  NormalizationRules rules =
      rules_.empty() ? NormalizationRules::GaelicDefaults() : NormalizationRules::FromFile(rules_);
  rules.Validate();
  const auto lines = ReadCorpus(input_);
  AtomicWriteFile(output_, [&](std::ostream &os) {
    for (const auto &l : lines)
      os << l.id << '\t' << Join(NormalizeText(l.text, rules, l.id).tokens, " ") << '\n';
  });
  spdlog::info("normalized {} utterances", lines.size());
}

void Tool::TrainBpe() {
  if (vocab_size_ < 1) throw Error("VocabTooSmall", "vocab size must be positive");
  auto model = SubwordModel::Train(Tokens(ReadCorpus(input_)),
                                   static_cast<size_t>(vocab_size_), boundary_);
  model.Write(output_);
  spdlog::info("trained {} merges, inventory {}", model.merges().size(),
               model.inventory().size());
}

void Tool::Encode() {
  const auto model = SubwordModel::Read(model_);
  const auto lines = ReadCorpus(input_);
  std::vector<std::string> out;
  for (const auto &l : lines) {
    auto tokens = SplitWhitespace(l.text);
    out.push_back(l.id + "\t" + Join(reverse_ ? model.Decode(tokens) : model.Encode(tokens), " "));
  }
  AtomicWriteFile(output_, [&](std::ostream &os) {
    for (const auto &line : out) os << line << '\n';
  });
}

void Tool::TrainLm() {
  auto lm = TrainKneserNey(Tokens(ReadCorpus(input_)), order_, discount_);
  WriteArpa(lm, output_);
  spdlog::info("trained order-{} LM over {} words", lm.order(), lm.VocabSize());
}

void Tool::Ppl() {
  const auto lm = ReadArpa(lm_);
  const auto corpus = Tokens(ReadCorpus(input_));
  const auto r = ComputePerplexity(lm, corpus);
  out_ << input_ << ": " << corpus.size() << " sentences, " << r.num_tokens << " tokens, "
       << r.num_oov << " OOVs\n"
       << "logprob= " << Fixed(r.log10_prob, 4) << " ppl= " << Fixed(r.perplexity, 4) << '\n';
}

void Tool::InterpolateLm() {
  auto lm = Interpolate(ReadArpa(lm_), ReadArpa(lm_b_), lambda_);
  WriteArpa(lm, output_);
}

void Tool::BuildGraph() {
  const auto lm = ReadArpa(lm_);
  WeightedFst G = GrammarFst(lm);
  std::vector<std::string> vocab;
  for (WordId w = 0; w < static_cast<WordId>(lm.VocabSize()); ++w) vocab.push_back(lm.Word(w));

  Lexicon lexicon;
  if (!lexicon_.empty()) {
    lexicon = Lexicon::Read(lexicon_);
  } else if (units_mode_ == "bpe") {
    if (unit_model_.empty())
      throw Error("BadConfig", "--units bpe requires --unit-model");
    lexicon = SubwordLexicon(vocab, SubwordModel::Read(unit_model_), lm_boundary_);
  } else {
    lexicon = GraphemeLexicon(vocab);
  }
  LexiconOptions lopts{silence_unit_, silence_cost_};
  WeightedFst L = LexiconFst(lexicon, G.OutputSymbols(), lopts);

  BiphoneCounts counts;
  if (!train_text_.empty()) {
    std::map<std::string, const std::vector<std::string> *> pron;
    for (const auto &[w, u] : lexicon.entries) pron.emplace(w, &u);
    std::vector<std::vector<std::string>> seqs;
    for (const auto &sent : Tokens(ReadCorpus(train_text_))) {
      std::vector<std::string> units;
      for (const auto &w : sent) {
        auto it = pron.find(w);
        if (it != pron.end()) units.insert(units.end(), it->second->begin(), it->second->end());
      }
      if (!units.empty()) seqs.push_back(std::move(units));
    }
    counts = CountBiphones(seqs);
  }
  const auto &unit_syms = L.InputSymbols();
  std::vector<std::string> units(unit_syms->symbols().begin() + 1, unit_syms->symbols().end());
  BiphoneTying tying = ClusterBiphones(counts, tying_threshold_, units);
  WeightedFst C = ContextFst(tying, unit_syms);
  WeightedFst H = TopologyFst(tying.NumClasses());
  GraphOptions gopts{!no_determinize_, max_state_factor_};
  WeightedFst HCLG = BuildDecodingGraph(H, C, L, G, gopts);

  fs::create_directories(output_dir_);
  const fs::path dir(output_dir_);
  WriteFstText(HCLG, (dir / "HCLG.fst").string());
  HCLG.OutputSymbols()->Write((dir / "words.txt").string());
  HCLG.InputSymbols()->Write((dir / "classes.txt").string());
  unit_syms->Write((dir / "units.txt").string());
  tying.Write((dir / "tying.txt").string());
  lexicon.Write((dir / "lexicon.txt").string());
  AtomicWriteFile((dir / "silence.txt").string(), [&](std::ostream &os) {
    if (silence_unit_.empty()) return;
    std::set<int32_t> classes{tying.Fallback(silence_unit_)};
    for (const auto &[key, c] : tying.Biphones())
      if (key.second == silence_unit_) classes.insert(c);
    for (int32_t c : classes) os << c + 1 << '\n';
  });
  spdlog::info("HCLG: {} states, {} arcs, {} classes", HCLG.NumStates(), HCLG.NumArcs(),
               tying.NumClasses());
}

namespace {

WeightedFst LoadGraph(const std::string &dir_path) {
  const fs::path dir(dir_path);
  for (const char *f : {"HCLG.fst", "words.txt"})
    if (!fs::exists(dir / f))
      throw Error("MissingPath", (dir / f).string() + " does not exist");
  WeightedFst graph = ReadFstText((dir / "HCLG.fst").string());
  graph.Validate();
  graph.SetOutputSymbols(
      std::make_shared<SymbolTable>(SymbolTable::Read((dir / "words.txt").string())));
  return graph;
}

std::string JoinHypothesis(const std::vector<std::string> &tokens,
                           const SubwordModel *subwords) {
  return Join(subwords ? subwords->Decode(tokens) : tokens, " ");
}

}  // namespace

void Tool::DecodeCmd() {
  const WeightedFst graph = LoadGraph(graph_dir_);
  const fs::path sil_path = fs::path(graph_dir_) / "silence.txt";
  if (fs::exists(sil_path))
    for (const auto &line : ReadLines(sil_path.string())) {
      int64_t l;
      if (ParseInt(Trim(line), &l)) decode_cfg_.silence_labels.insert(static_cast<Label>(l));
    }
  std::unique_ptr<SubwordModel> subwords;
  if (!lm_subword_model_.empty())
    subwords = std::make_unique<SubwordModel>(SubwordModel::Read(lm_subword_model_));

  auto utts = ReadPosteriorgrams(posteriors_);
  struct Piece {
    std::string source;
    double offset;
  };
  std::vector<Piece> pieces;
  std::vector<Posteriorgram> pgs;
  for (auto &pg : utts) {
    if (chunk_seconds_ <= 0.0) {
      pieces.push_back({pg.utt_id, 0.0});
      pgs.push_back(std::move(pg));
      continue;
    }
    for (const auto &[b, e] : ChunkStream(pg.Duration(), chunk_seconds_)) {
      const int32_t fb = static_cast<int32_t>(std::llround(b * pg.frame_rate));
      const int32_t fe = std::min(pg.num_frames,
                                  static_cast<int32_t>(std::llround(e * pg.frame_rate)));
      if (fe <= fb) continue;
      Posteriorgram chunk(SegmentId(pg.utt_id, b, e), fe - fb, pg.num_classes, pg.frame_rate);
      std::copy(pg.data.begin() + static_cast<size_t>(fb) * pg.num_classes,
                pg.data.begin() + static_cast<size_t>(fe) * pg.num_classes, chunk.data.begin());
      pieces.push_back({pg.utt_id, b});
      pgs.push_back(std::move(chunk));
    }
  }
  if (!write_pgs_.empty()) WritePosteriorgrams(pgs, write_pgs_, binary_pgs_);

  const auto results = DecodeBatch(graph, pgs, decode_cfg_, workers_);
  size_t forced = 0;
  for (const auto &r : results) forced += r.forced_final;
  if (forced > 0)
    spdlog::warn("{} of {} utterances ended without reaching a final state", forced,
                 results.size());

  AtomicWriteFile(output_, [&](std::ostream &os) {
    for (size_t i = 0; i < results.size(); ++i)
      os << pgs[i].utt_id << '\t'
         << JoinHypothesis(WordStrings(graph, results[i].words), subwords.get()) << '\n';
  });
  if (!lattices_.empty()) {
    std::vector<std::pair<std::string, Lattice>> lats;
    for (size_t i = 0; i < results.size(); ++i)
      lats.emplace_back(pgs[i].utt_id, results[i].lattice);
    WriteLattices(lats, lattices_);
  }
  if (!timings_.empty()) {
    AtomicWriteFile(timings_, [&](std::ostream &os) {
      for (size_t i = 0; i < results.size(); ++i)
        for (const auto &w : results[i].timings)
          os << pieces[i].source << '\t' << FormatDouble(pieces[i].offset) << '\t'
             << FormatDouble(pgs[i].frame_rate) << '\t' << w.word << '\t' << w.start_frame
             << '\t' << w.end_frame << '\n';
    });
  }
  spdlog::info("decoded {} utterances", results.size());
}

void Tool::NBestCmd() {
  if (n_ < 1) throw Error("BadN", "n-best size must be at least 1");
  std::vector<std::pair<std::string, std::vector<NBestEntry>>> lists;
  for (const auto &[id, lat] : ReadLattices(lattices_))
    lists.emplace_back(id, NBest(lat, static_cast<size_t>(n_)));
  WriteNBest(lists, output_);
}

void Tool::TrainRnnLmCmd() {
  auto corpus = Tokens(ReadCorpus(input_));
  std::vector<std::vector<std::string>> heldout;
  if (!heldout_.empty()) {
    heldout = Tokens(ReadCorpus(heldout_));
  } else if (heldout_fraction_ > 0.0 && corpus.size() > 1) {
    if (heldout_fraction_ >= 1.0)
      throw Error("BadConfig", "--heldout-fraction must lie in [0, 1)");
    size_t k = static_cast<size_t>(std::ceil(heldout_fraction_ * corpus.size()));
    k = std::min(k, corpus.size() - 1);
    heldout.assign(corpus.end() - k, corpus.end());
    corpus.resize(corpus.size() - k);
  }
  auto res = TrainRnnLm(corpus, heldout, rnn_opts_);
  out_ << "epoch 0 train_loss " << Fixed(res.initial_train_loss, 6) << '\n';
  for (const auto &e : res.epochs)
    out_ << "epoch " << e.epoch << " train_loss " << Fixed(e.train_loss, 6)
         << " heldout_ppl " << Fixed(e.heldout_perplexity, 4) << '\n';
  res.model.Write(output_);
}

void Tool::RescoreCmd() {
  if (lm_.empty() == rnnlm_path_.empty())
    throw Error("BadConfig", "give exactly one of --lm and --rnnlm");
  std::unique_ptr<BackoffNGramLM> ngram;
  std::unique_ptr<RnnLm> rnn;
  std::unique_ptr<SentenceScorer> scorer;
  if (!lm_.empty()) {
    ngram = std::make_unique<BackoffNGramLM>(ReadArpa(lm_));
    scorer = std::make_unique<NGramScorer>(*ngram);
  } else {
    rnn = std::make_unique<RnnLm>(RnnLm::Read(rnnlm_path_));
    scorer = std::make_unique<RnnScorer>(*rnn);
  }
  std::unique_ptr<SubwordModel> subwords;
  if (!lm_subword_model_.empty())
    subwords = std::make_unique<SubwordModel>(SubwordModel::Read(lm_subword_model_));

  auto lists = ReadNBest(nbest_path_);
  std::vector<std::vector<NBestEntry>> entries;
  for (auto &[id, l] : lists) entries.push_back(std::move(l));
  auto rescored = RescoreBatch(entries, *scorer, lm_scale_, lambda_, workers_);
  for (size_t i = 0; i < lists.size(); ++i) {
    for (auto &e : rescored[i]) e.lm_cost = e.total - e.am_cost;
    lists[i].second = std::move(rescored[i]);
  }
  WriteNBest(lists, output_);
  if (!hyp_output_.empty())
    AtomicWriteFile(hyp_output_, [&](std::ostream &os) {
      for (const auto &[id, l] : lists)
        os << id << '\t' << JoinHypothesis(l.front().words, subwords.get()) << '\n';
    });
}

void Tool::SegmentCmd() {
  std::vector<DecodedChunk> chunks;
  double rate = 0.0;
  size_t line_no = 0;
  for (const auto &line : ReadLines(timings_)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto f = Split(line, '\t');
    double offset, fr;
    int64_t b, e;
    if (f.size() != 6 || !ParseDouble(f[1], &offset) || !ParseDouble(f[2], &fr) ||
        !ParseInt(f[4], &b) || !ParseInt(f[5], &e))
      throw Error("BadTimings", "line " + std::to_string(line_no) +
                                    ": expected 'source offset frame_rate word start end'");
    if (rate == 0.0) rate = fr;
    if (fr != rate) throw Error("BadTimings", "frame rates differ between lines");
    if (chunks.empty() || chunks.back().source_id != f[0] || chunks.back().offset != offset)
      chunks.push_back(DecodedChunk{f[0], offset, {}});
    chunks.back().words.push_back(
        WordTiming{f[3], static_cast<int32_t>(b), static_cast<int32_t>(e)});
  }
  if (rate > 0.0) seg_opts_.frame_rate = rate;
  const auto segments = DeriveSegments(chunks, seg_opts_);
  AtomicWriteFile(output_, [&](std::ostream &os) {
    for (const auto &s : segments)
      os << s.source_id << '\t' << FormatDouble(s.start) << '\t' << FormatDouble(s.end)
         << '\t' << Join(s.words, " ") << '\n';
  });
  spdlog::info("kept {} segments", segments.size());
}

void Tool::PseudoManifest() {
  std::vector<Segment> segments;
  size_t line_no = 0;
  for (const auto &line : ReadLines(segments_)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto f = Split(line, '\t');
    Segment s;
    if (f.size() != 4 || !ParseDouble(f[1], &s.start) || !ParseDouble(f[2], &s.end))
      throw Error("BadSegments", "line " + std::to_string(line_no) +
                                     ": expected 'source start end transcript'");
    s.source_id = f[0];
    s.words = SplitWhitespace(f[3]);
    segments.push_back(std::move(s));
  }
  std::map<std::string, std::string> paths;
  if (!source_paths_.empty())
    for (const auto &l : ReadCorpus(source_paths_)) paths[l.id] = std::string(Trim(l.text));
  Manifest m;
  if (!merge_.empty()) m = Manifest::Read(merge_);
  m.Merge(MakePseudoManifest(segments, paths));
  m.Write(output_);
}

void Tool::AugmentCmd() {
  AugmentOptions opts;
  opts.copies = copies_;
  opts.seed = seed_;
  opts.snr_db = ParseDoubleList(snrs_, "--snrs");
  const Manifest in = Manifest::Read(manifest_);
  std::vector<Wave> noises;
  for (const auto &line : ReadLines(noise_list_)) {
    auto p = std::string(Trim(line));
    if (!p.empty()) noises.push_back(ReadWave(p));
  }
  std::vector<Wave> waves;
  std::vector<std::string> ids;
  for (const auto &r : in.Rows()) {
    waves.push_back(ReadWave(r.path));
    ids.push_back(r.segment_id);
  }
  const auto copies = AugmentBatch(waves, ids, noises, opts, workers_);
  fs::create_directories(output_dir_);
  Manifest out;
  for (size_t i = 0; i < in.Rows().size(); ++i) {
    std::vector<std::string> paths;
    for (size_t k = 0; k < copies[i].size(); ++k) {
      const std::string p = (fs::path(output_dir_) /
                             (ids[i] + "-aug" + std::to_string(k + 1) + ".wav")).string();
      WriteWave(copies[i][k].wave, p);
      paths.push_back(p);
    }
    for (const auto &row : AugmentedRows(in.Rows()[i], paths)) out.Add(row);
  }
  out.Write(output_);
  spdlog::info("wrote {} rows", out.Size());
}

void Tool::Score() {
  const auto report = ScoreBatch(ReadCorpus(ref_), ReadCorpus(hyp_), lenient_, workers_);
  report.WriteSummary(out_);
  if (!tsv_.empty())
    AtomicWriteFile(tsv_, [&](std::ostream &os) { report.WriteTsv(os); });
  if (!alignments_.empty())
    AtomicWriteFile(alignments_, [&](std::ostream &os) {
      for (const auto &u : report.utterances) {
        os << u.id;
        for (const auto &p : u.alignment)
          os << ' ' << (p.ref.empty() ? "*" : p.ref) << ':' << (p.hyp.empty() ? "*" : p.hyp)
             << ':' << EditOpName(p.op);
        os << '\n';
      }
    });
}

// Returns the config-derived "--key=value" arguments for `sub`.
std::vector<std::string> ConfigArgs(const std::string &path, const std::string &sub,
                                    CLI::App &app) {
  const IniData ini = ReadIni(path);
  std::vector<std::string> args;
  const std::string own = ConfigSection(sub);
  for (const auto &[section, values] : ini) {
    if (section.empty() || section == "cli") {
      for (const auto &[key, value] : values)
        if (app.get_subcommand(sub)->get_option_no_throw("--" + key))
          args.push_back("--" + key + "=" + value);
      continue;
    }
    std::vector<std::string> users;
    for (const auto &info : kSubcommands)
      if (section == info.section) users.push_back(info.name);
    if (users.empty()) throw Error("ConfigParse", "unknown config section [" + section + "]");
    for (const auto &[key, value] : values) {
      bool known = false;
      for (const auto &u : users)
        known = known || app.get_subcommand(u)->get_option_no_throw("--" + key) != nullptr;
      if (!known)
        throw Error("ConfigParse", "unknown key '" + key + "' in section [" + section + "]");
      if (section == own && app.get_subcommand(sub)->get_option_no_throw("--" + key))
        args.push_back("--" + key + "=" + value);
    }
  }
  return args;
}

void SetupLogging(const std::string &level) {
  static std::shared_ptr<spdlog::logger> logger = [] {
    auto l = spdlog::stderr_logger_mt("hasr");
    l->set_pattern("[%l] %v");
    return l;
  }();
  spdlog::set_default_logger(logger);
  auto lv = spdlog::level::from_str(level);
  if (lv == spdlog::level::off && level != "off")
    throw Error("BadConfig", "unknown log level '" + level + "'");
  spdlog::set_level(lv);
}

}  // namespace

const std::vector<OperationOwner> &CommandTable() { return kCommandTable; }

const char *ConfigSection(const std::string &subcommand) {
  for (const auto &info : kSubcommands)
    if (subcommand == info.name) return info.section;
  return "";
}

std::vector<std::string> SubcommandNames() {
  std::ostringstream sink;
  Tool tool(sink);
  std::vector<std::string> names;
  for (const auto *s : tool.app().get_subcommands([](CLI::App *) { return true; }))
    names.push_back(s->get_name());
  return names;
}

int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Tool tool(out);
  CLI::App &app = tool.app();
  std::string sub;
  std::vector<std::string> argv(args.begin(), args.end());
  try {
    // Locate the subcommand and any --config before the real parse so that
    // config values can be injected ahead of the user's flags.
    size_t sub_pos = 0;
    std::string config;
    for (size_t i = 1; i < argv.size(); ++i) {
      const std::string &a = argv[i];
      if (a == "--config" && i + 1 < argv.size()) {
        config = argv[++i];
      } else if (a.rfind("--config=", 0) == 0) {
        config = a.substr(9);
      } else if (sub.empty() && ConfigSection(a)[0] != '\0') {
        sub = a;
        sub_pos = i;
      }
    }
    // Unknown flags are reported before missing required options.
    if (!sub.empty()) {
      const CLI::App *sc = app.get_subcommand(sub);
      for (size_t i = sub_pos + 1; i < argv.size(); ++i) {
        const std::string &a = argv[i];
        if (a.rfind("--", 0) != 0 || a == "--") continue;
        const std::string name = a.substr(0, a.find('='));
        if (!sc->get_option_no_throw(name) && !app.get_option_no_throw(name) && name != "--help") {
          err << "ERROR UnknownFlag: " << name << " is not an option of '" << sub << "'\n";
          return 2;
        }
      }
    }
    if (!config.empty() && !sub.empty()) {
      if (!fs::exists(config)) throw Error("MissingPath", "--config " + config + " does not exist");
      auto injected = ConfigArgs(config, sub, app);
      argv.insert(argv.begin() + sub_pos + 1, injected.begin(), injected.end());
    }
    std::vector<std::string> rev(argv.rbegin(), argv.rend() - 1);
    try {
      app.parse(rev);
    } catch (const CLI::Success &e) {
      return app.exit(e, out, err);
    } catch (const CLI::ExtrasError &e) {
      err << "ERROR UnknownFlag: " << e.what() << '\n';
      return 2;
    } catch (const CLI::ParseError &e) {
      err << "ERROR UsageError: " << e.what() << '\n';
      return 2;
    }
    SetupLogging(tool.log_level());
    for (const auto *s : app.get_subcommands()) sub = s->get_name();
    tool.CheckInputs(sub);
    tool.Dispatch(sub);
  } catch (const Error &e) {
    err << "ERROR " << e.code() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "ERROR Internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace cli
}  // namespace hasr
