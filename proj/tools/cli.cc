// Copyright 2026 The morphtok Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "morphtok/bpe.h"
#include "morphtok/challenge.h"
#include "morphtok/checksum.h"
#include "morphtok/common.h"
#include "morphtok/harness.h"
#include "morphtok/label_io.h"
#include "morphtok/labeller.h"
#include "morphtok/lexicon.h"
#include "morphtok/merge_list.h"
#include "morphtok/sweep.h"
#include "morphtok/vocabulary.h"

namespace morphtok {
namespace {

using nlohmann::json;

std::string VersionLine(const char* what, const char* format, int version) {
  return std::string(what) + ": " + format + " v" + std::to_string(version) + "\n";
}

// Logs and returns the checksum of every input file.
std::vector<InputChecksum> LogInputs(const std::vector<std::string>& paths) {
  std::vector<InputChecksum> out;
  for (const auto& p : paths) {
    if (p.empty()) continue;
    out.push_back({p, Sha256File(p)});
    spdlog::info("input {} sha256={}", p, out.back().sha256);
  }
  return out;
}

void EnsureParent(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

// Options shared by every command that needs a labeller.
struct LabellerFlags {
  std::string lexicon;
  std::string vocab;
  std::string vocab_format = "lines";
  std::string scheme = "plain";

  void Register(CLI::App* cmd, bool lexicon_required = true) {
    auto* opt = cmd->add_option("--lexicon", lexicon, "Lexicon snapshot")
                    ->check(CLI::ExistingFile);
    if (lexicon_required) opt->required();
    cmd->add_option("--vocab", vocab, "Tokenizer vocabulary file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--vocab-format", vocab_format, "lines or tokenizer-json")
        ->check(CLI::IsMember({"lines", "tokenizer-json"}));
    cmd->add_option("--scheme", scheme, "Marker scheme: plain, sentencepiece, "
                                        "byte-level or wordpiece")
        ->check(CLI::IsMember({"plain", "sentencepiece", "byte-level", "wordpiece"}));
  }

  MarkerScheme Scheme() const { return ParseMarkerScheme(scheme); }

  std::optional<Vocabulary> LoadVocabulary() const {
    if (vocab.empty()) return std::nullopt;
    return LoadVocab(vocab,
                     vocab_format == "lines" ? VocabFormat::kTokenPerLine
                                             : VocabFormat::kTokenizerJson,
                     Scheme());
  }
};

// Either a tokenization table or a trained BPE model at a checkpoint size.
struct TokenizerFlags {
  std::string tokens;
  std::string model;
  size_t size = 0;

  void Register(CLI::App* cmd) {
    auto* t = cmd->add_option("--tokens", tokens, "Tokenization table (JSONL or TSV)")
                  ->check(CLI::ExistingFile);
    auto* m = cmd->add_option("--model", model, "BPE model from train-bpe")
                  ->check(CLI::ExistingFile);
    cmd->add_option("--size", size, "Vocabulary size of the BPE checkpoint to use");
    t->excludes(m);
  }

  void Validate() const {
    if (tokens.empty() == model.empty())
      throw CLI::ValidationError("--tokens/--model", "exactly one is required");
    if (!model.empty() && size == 0)
      throw CLI::RequiredError("--size (required with --model)");
  }
};

// --------------------------------------------------------------------------
// Subcommands

struct BuildLexiconCmd {
  std::vector<std::string> inflection, derivation, compound;
  std::string out, reject_report, case_policy = "exact-then-lower";
  int max_depth = 16;

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("build-lexicon", "Build a lexicon snapshot from TSV records");
    cmd->add_option("--inflection", inflection, "Inflection TSV files")->check(CLI::ExistingFile);
    cmd->add_option("--derivation", derivation, "Derivation TSV files")->check(CLI::ExistingFile);
    cmd->add_option("--compound", compound, "Compound TSV files")->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Output snapshot (JSON)")->required();
    cmd->add_option("--reject-report", reject_report, "CSV of malformed input lines");
    cmd->add_option("--case-policy", case_policy, "exact, exact-then-lower or lower");
    cmd->add_option("--max-depth", max_depth, "Chain resolution depth cap")
        ->check(CLI::PositiveNumber);
    cmd->callback([this] { Run(); });
  }

  void Run() {
    std::vector<std::string> all = inflection;
    all.insert(all.end(), derivation.begin(), derivation.end());
    all.insert(all.end(), compound.begin(), compound.end());
    if (all.empty()) throw CLI::RequiredError("--inflection, --derivation or --compound");
    LogInputs(all);
    ParseResult parsed;
    auto add = [&](ParseResult r) {
      parsed.records.insert(parsed.records.end(), r.records.begin(), r.records.end());
      parsed.rejects.insert(parsed.rejects.end(), r.rejects.begin(), r.rejects.end());
    };
    if (!inflection.empty())
      add(ParseRecords(inflection, RecordFormat::kUnimorphTsv, RecordKind::kInflection));
    if (!derivation.empty())
      add(ParseRecords(derivation, RecordFormat::kUnimorphTsv, RecordKind::kDerivation));
    if (!compound.empty()) add(ParseRecords(compound, RecordFormat::kCompoundTsv));
    if (!reject_report.empty()) {
      EnsureParent(reject_report);
      WriteRejectReport(reject_report, parsed.rejects);
    }
    std::vector<std::string> diagnostics;
    ResolveOptions resolve;
    resolve.max_depth = max_depth;
    const auto lexicon = MorphLexicon::Build(std::move(parsed.records),
                                             ParseCasePolicy(case_policy), resolve,
                                             &diagnostics);
    for (const auto& d : diagnostics) spdlog::warn("{}", d);
    EnsureParent(out);
    lexicon.Save(out);
    spdlog::info("wrote {} words ({} rejected lines) to {}", lexicon.size(),
                 parsed.rejects.size(), out);
  }
};

struct BuildMergesCmd {
  std::string lexicon, words, out;

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("build-merges", "Write morphological merge lists as JSONL");
    cmd->add_option("--lexicon", lexicon, "Lexicon snapshot")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--words", words, "Restrict to these words (one per line)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Output JSONL")->required();
    cmd->callback([this] { Run(); });
  }

  void Run() {
    LogInputs({lexicon, words});
    const auto lex = MorphLexicon::Load(lexicon);
    std::vector<std::string> targets;
    if (words.empty()) {
      for (const auto& [w, segs] : lex.entries()) targets.push_back(w);
    } else {
      for (const auto& [w, count] : ReadWordList(words)) targets.push_back(w);
    }
    std::string text;
    size_t written = 0;
    for (const auto& w : targets) {
      const auto lists = BuildMergeLists(w, lex);
      if (lists.empty()) {
        spdlog::warn("'{}' is not in the lexicon; skipped", w);
        continue;
      }
      // Entries of all analyses; the first analysis wins a shared key.
      json entries = json::object();
      json analyses = json::array();
      for (const auto& list : lists) {
        analyses.push_back(list.morphemes());
        for (const auto& [key, value] : list.MergeEntries())
          if (!entries.contains(key)) entries[key] = value;
      }
      text += json{{"word", w}, {"analyses", analyses}, {"entries", entries}}.dump() + "\n";
      ++written;
    }
    EnsureParent(out);
    WriteFile(out, text);
    spdlog::info("wrote merge lists for {} words to {}", written, out);
  }
};

struct LabelCmd {
  LabellerFlags flags;
  std::string in, out, in_format, out_format;
  int* threads;

  explicit LabelCmd(int* t) : threads(t) {}

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("label", "Label tokenized words vocab/morph/alien/na");
    flags.Register(cmd);
    cmd->add_option("--in", in, "Tokenized words (JSONL or TSV)")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Labelled output (JSONL or TSV)")->required();
    cmd->add_option("--in-format", in_format, "jsonl or tsv (default: from extension)");
    cmd->add_option("--out-format", out_format, "jsonl or tsv (default: from extension)");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    LogInputs({flags.lexicon, flags.vocab, in});
    const auto lexicon = MorphLexicon::Load(flags.lexicon);
    const auto vocab = flags.LoadVocabulary();
    const Labeller labeller(&lexicon, vocab ? &*vocab : nullptr);
    const auto rows = ReadTokenizedWords(
        in, in_format.empty() ? RowFormatForPath(in) : ParseRowFormat(in_format));
    const auto labelled = LabelBatch(labeller, rows, flags.Scheme(), *threads);
    EnsureParent(out);
    WriteLabels(out, labelled,
                out_format.empty() ? RowFormatForPath(out) : ParseRowFormat(out_format));
    size_t counts[4] = {0, 0, 0, 0};
    for (const auto& r : labelled) ++counts[static_cast<int>(r.label.value)];
    spdlog::info("labelled {} words: vocab={} morph={} alien={} na={}", labelled.size(),
                 counts[0], counts[1], counts[2], counts[3]);
  }
};

struct TrainBpeCmd {
  std::string corpus, out, words_out;
  size_t max_size = 0, step = 1000, top_words = 20000;
  bool lowercase = false;

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("train-bpe", "Train a BPE model with vocabulary checkpoints");
    cmd->add_option("--corpus", corpus, "Plain-text training corpus")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--max-size", max_size, "Largest vocabulary size")->required();
    cmd->add_option("--step", step, "Checkpoint spacing in vocabulary size");
    cmd->add_option("--out", out, "Model JSON")->required();
    cmd->add_option("--words-out", words_out, "Also write the top words with counts");
    cmd->add_option("--top-words", top_words, "Number of words for --words-out");
    cmd->add_flag("--lowercase", lowercase, "Lowercase the corpus before counting");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    LogInputs({corpus});
    const auto counts = CountWords(corpus, lowercase);
    spdlog::info("{} distinct words in corpus", counts.size());
    BpeTrainOptions opts;
    opts.max_size = max_size;
    opts.checkpoint_step = step;
    const auto model = TrainBpe(counts, opts);
    EnsureParent(out);
    model.Save(out);
    spdlog::info("wrote {} merges and {} checkpoints to {}", model.merges().size(),
                 model.checkpoints().size(), out);
    if (!words_out.empty()) {
      EnsureParent(words_out);
      WriteWordList(words_out, TopWords(counts, top_words));
    }
  }
};

struct SweepCmd {
  std::string model, words, lexicon, out;
  size_t top = 0;
  int* threads;

  explicit SweepCmd(int* t) : threads(t) {}

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("sweep", "Label distribution at every BPE checkpoint");
    cmd->add_option("--model", model, "BPE model")->required()->check(CLI::ExistingFile);
    cmd->add_option("--words", words, "Word list (word[TAB]count)")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--lexicon", lexicon, "Lexicon snapshot")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Output CSV")->required();
    cmd->add_option("--top", top, "Use only the first N words (0: all)");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    LogInputs({model, words, lexicon});
    const auto bpe = BpeModel::Load(model);
    const auto lex = MorphLexicon::Load(lexicon);
    std::vector<std::string> list;
    for (const auto& [w, c] : ReadWordList(words)) {
      if (top > 0 && list.size() >= top) break;
      list.push_back(w);
    }
    SweepOptions opts;
    opts.threads = *threads;
    const auto rows = SweepStats(bpe, bpe.checkpoints(), list, lex, opts);
    EnsureParent(out);
    WriteFile(out, SweepCsv(rows));
    spdlog::info("wrote {} checkpoint rows to {}", rows.size(), out);
  }
};

struct GenChallengeCmd {
  std::string task, out_dir, senses, frequencies, categories, lexicon, tokens, ranked, pool;
  uint64_t seed = 0;
  std::optional<size_t> train, dev, test;
  size_t shared_subwords = 5000;
  int max_retries = 1000;

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("gen-challenge", "Generate a WaD, WaM or WaW dataset");
    cmd->add_option("--task", task, "wad, wam or waw")
        ->required()->check(CLI::IsMember({"wad", "wam", "waw"}));
    cmd->add_option("--out-dir", out_dir, "Output directory")->required();
    cmd->add_option("--seed", seed, "Random seed (default 0)");
    cmd->add_option("--train", train, "Train split size");
    cmd->add_option("--dev", dev, "Dev split size");
    cmd->add_option("--test", test, "Test split size");
    cmd->add_option("--senses", senses, "wad: sense dump word[TAB]definition")
        ->check(CLI::ExistingFile);
    cmd->add_option("--frequencies", frequencies, "wad: word[TAB]count tie-break list")
        ->check(CLI::ExistingFile);
    cmd->add_option("--categories", categories, "wam: word[TAB]category")
        ->check(CLI::ExistingFile);
    cmd->add_option("--lexicon", lexicon, "wam: derive categories from a lexicon snapshot")
        ->check(CLI::ExistingFile);
    cmd->add_option("--tokens", tokens, "wam: reference tokenization")
        ->check(CLI::ExistingFile);
    cmd->add_option("--ranked", ranked, "wam: subwords ranked by usage")
        ->check(CLI::ExistingFile);
    cmd->add_option("--shared-subwords", shared_subwords, "wam: size of the shared set");
    cmd->add_option("--pool", pool, "waw: relation pool word_a[TAB]word_b[TAB]relation")
        ->check(CLI::ExistingFile);
    cmd->add_option("--max-negative-retries", max_retries, "waw: negative sampling retries");
    cmd->callback([this] { Run(); });
  }

  static void Need(const std::string& value, const char* flag, const char* t) {
    if (value.empty())
      throw CLI::RequiredError(std::string(flag) + " (required for --task " + t + ")");
  }

  SplitSizes Sizes(SplitSizes defaults) const {
    if (train) defaults.train = *train;
    if (dev) defaults.dev = *dev;
    if (test) defaults.test = *test;
    return defaults;
  }

  void Run() {
    const Task t = ParseTask(task);
    std::vector<ChallengeInstance> rows;
    std::vector<InputChecksum> inputs;
    SplitSizes sizes;
    if (t == Task::kWaD) {
      Need(senses, "--senses", "wad");
      inputs = LogInputs({senses, frequencies});
      WadOptions opts;
      opts.sizes = sizes = Sizes(kWadSizes);
      opts.seed = seed;
      if (!frequencies.empty())
        for (const auto& [w, c] : ReadWordList(frequencies)) opts.frequencies[w] = c;
      rows = GenerateWaD(ReadSenseDump(senses), opts);
    } else if (t == Task::kWaM) {
      if (categories.empty() == lexicon.empty())
        throw CLI::ValidationError("--categories/--lexicon", "exactly one is required");
      Need(tokens, "--tokens", "wam");
      Need(ranked, "--ranked", "wam");
      inputs = LogInputs({categories, lexicon, tokens, ranked});
      const CategoryMap cats =
          categories.empty()
              ? CategoriesFromRecords(MorphLexicon::Load(lexicon).index().records())
              : ReadCategories(categories);
      WamOptions opts;
      opts.sizes = sizes = Sizes(kWamSizes);
      opts.seed = seed;
      opts.shared_subwords = shared_subwords;
      rows = GenerateWaM(cats, ReadReferenceTokenization(tokens, ranked), opts);
    } else {
      Need(pool, "--pool", "waw");
      inputs = LogInputs({pool});
      WawOptions opts;
      opts.sizes = sizes = Sizes(kWawSizes);
      opts.seed = seed;
      opts.max_negative_retries = max_retries;
      rows = GenerateWaW(ReadRelationPool(pool), opts);
    }
    std::filesystem::create_directories(out_dir);
    const auto manifest = WriteChallenge(out_dir, t, rows, sizes, seed, inputs);
    spdlog::info("wrote {} {} instances to {}", rows.size(), task, out_dir);
    if (rows.size() < sizes.total())
      spdlog::warn("requested {} instances but only {} could be generated", sizes.total(),
                   rows.size());
  }
};

struct SliceCmd {
  LabellerFlags flags;
  TokenizerFlags tok;
  std::string dataset, out;

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("slice", "Assign dataset instances to label groups");
    flags.Register(cmd);
    tok.Register(cmd);
    cmd->add_option("--dataset", dataset, "Dataset JSONL")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Group assignments JSONL")->required();
    cmd->callback([this] { Run(); });
  }

  void Run() {
    tok.Validate();
    LogInputs({flags.lexicon, flags.vocab, tok.tokens, tok.model, dataset});
    const auto lexicon = MorphLexicon::Load(flags.lexicon);
    const auto rows = ReadDataset(dataset);
    std::optional<Vocabulary> vocab;
    std::unordered_map<std::string, SubwordSequence> table;
    if (!tok.tokens.empty()) {
      vocab = flags.LoadVocabulary();
      table = ReadTokenizationTable(tok.tokens, RowFormatForPath(tok.tokens), flags.Scheme());
    } else {
      const auto model = BpeModel::Load(tok.model);
      const size_t merges = model.MergesForSize(tok.size);
      vocab = model.VocabularyAt(merges);
      for (const auto& r : rows)
        for (const auto& w : r.words)
          if (!table.count(w)) table[w] = SubwordSequence{model.Tokenize(w, merges).subwords};
    }
    const Labeller labeller(&lexicon, vocab ? &*vocab : nullptr);
    const auto groups = AssignGroups(rows, table, labeller);
    EnsureParent(out);
    WriteGroups(out, groups);
    std::map<std::string, size_t> sizes;
    for (const auto& g : groups) ++sizes[g.group];
    for (const auto& [g, n] : sizes) spdlog::info("group {}: {}", g, n);
  }
};

struct ScoreCmd {
  std::string dataset, groups, out, markdown;
  std::vector<std::string> preds;

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("score", "Per-group accuracy over prediction files");
    cmd->add_option("--dataset", dataset, "Dataset JSONL")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--groups", groups, "Group assignments from slice")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--pred", preds, "Prediction CSV (id,pred); repeat once per seed")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Report JSON (default: <groups>.report.json)");
    cmd->add_option("--markdown", markdown, "Markdown table (default: <out>.md)");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    std::vector<std::string> all = {dataset, groups};
    all.insert(all.end(), preds.begin(), preds.end());
    const auto sums = LogInputs(all);
    std::vector<PredictionFile> files;
    for (const auto& p : preds) files.push_back(ReadPredictions(p));
    json meta;
    meta["dataset"] = dataset;
    meta["dataset_sha256"] = sums[0].sha256;
    meta["groups"] = groups;
    meta["toolkit_version"] = MORPHTOK_VERSION;
    const auto report = Score(ReadDataset(dataset), ReadGroups(groups), files, meta);
    if (out.empty()) out = groups + ".report.json";
    if (markdown.empty()) markdown = out + ".md";
    EnsureParent(out);
    WriteFile(out, report.ToJson().dump(2) + "\n");
    EnsureParent(markdown);
    WriteFile(markdown, report.ToMarkdown());
    spdlog::info("total accuracy {:.2f} ± {:.2f} over {} seeds; report in {}",
                 report.total.mean, report.total.std, files.size(), out);
  }
};

struct AdversarialCmd {
  LabellerFlags flags;
  TokenizerFlags tok;
  std::string in, candidates, out;
  uint64_t seed = 0;

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("adversarial", "Swap alien words for other alien words");
    flags.Register(cmd);
    tok.Register(cmd);
    cmd->add_option("--in", in, "Text pairs JSONL")->required()->check(CLI::ExistingFile);
    cmd->add_option("--candidates", candidates, "Candidate words (one per line)")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Adversarial JSONL")->required();
    cmd->add_option("--seed", seed, "Random seed (default 0)");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    tok.Validate();
    LogInputs({flags.lexicon, flags.vocab, tok.tokens, tok.model, in, candidates});
    const auto lexicon = MorphLexicon::Load(flags.lexicon);
    std::optional<Vocabulary> vocab;
    std::unordered_map<std::string, SubwordSequence> table;
    std::optional<BpeModel> model;
    size_t merges = 0;
    if (!tok.tokens.empty()) {
      vocab = flags.LoadVocabulary();
      table = ReadTokenizationTable(tok.tokens, RowFormatForPath(tok.tokens), flags.Scheme());
    } else {
      model = BpeModel::Load(tok.model);
      merges = model->MergesForSize(tok.size);
      vocab = model->VocabularyAt(merges);
    }
    WordTokenizer tokenizer = [&](std::string_view w) -> std::optional<SubwordSequence> {
      if (model) return SubwordSequence{model->Tokenize(w, merges).subwords};
      auto it = table.find(std::string(w));
      if (it == table.end()) return std::nullopt;
      return it->second;
    };
    std::vector<std::string> words;
    for (const auto& [w, c] : ReadWordList(candidates)) words.push_back(w);
    const Labeller labeller(&lexicon, vocab ? &*vocab : nullptr);
    const auto result = AdversarialSwap(ReadTextPairs(in), tokenizer, labeller, words, seed);
    std::string text;
    for (const auto& inst : result.instances) text += inst.ToJson().dump() + "\n";
    EnsureParent(out);
    WriteFile(out, text);
    spdlog::info("wrote {} adversarial instances ({} dropped, {} alien words unswapped)",
                 result.instances.size(), result.dropped, result.unswapped_words);
  }
};

struct AuditSampleCmd {
  std::string labels, out, labels_format;
  std::vector<std::string> classes = {"morph", "alien"};
  size_t per_class = 150;
  uint64_t seed = 0;

  void Register(CLI::App* app) {
    auto* cmd = app->add_subcommand("audit-sample", "Stratified sample for manual audit");
    cmd->add_option("--labels", labels, "Labelled words from label")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--labels-format", labels_format, "jsonl or tsv (default: from extension)");
    cmd->add_option("--out", out, "Audit TSV")->required();
    cmd->add_option("--per-class", per_class, "Words per class");
    cmd->add_option("--classes", classes, "Label classes to sample")->delimiter(',');
    cmd->add_option("--seed", seed, "Random seed (default 0)");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    LogInputs({labels});
    AuditOptions opts;
    opts.per_class = per_class;
    opts.seed = seed;
    opts.classes.clear();
    for (const auto& c : classes) opts.classes.push_back(ParseLabel(c));
    const auto corpus = ReadLabels(
        labels, labels_format.empty() ? RowFormatForPath(labels) : ParseRowFormat(labels_format));
    const auto rows = AuditSample(corpus, opts);
    EnsureParent(out);
    WriteFile(out, AuditTsv(rows));
    spdlog::info("wrote {} audit rows to {}", rows.size(), out);
  }
};

void SetUpLogging(const std::string& level) {
  auto logger = spdlog::get("morphtok");
  if (!logger) logger = spdlog::stderr_color_mt("morphtok");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

std::string VersionText() {
  return std::string("morphtok ") + MORPHTOK_VERSION + "\n" +
         VersionLine("lexicon snapshot", "morphtok-lexicon", MorphLexicon::kFormatVersion) +
         VersionLine("bpe model", "morphtok-bpe", 1) +
         VersionLine("challenge manifest", "morphtok-challenge-manifest", 1) +
         VersionLine("evaluation report", "morphtok-report", 1);
}

int RunCli(const std::vector<std::string>& args) {
  CLI::App app("Morphological validity labelling for subword tokenizations", "morphtok");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", VersionText());
  app.set_config("--config", "", "TOML-style config file; command-line flags win");

  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string log_level = "info";
  app.add_option("--threads", threads, "Worker threads for parallel stages")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));
  app.parse_complete_callback([&] { SetUpLogging(log_level); });

  BuildLexiconCmd build_lexicon;
  BuildMergesCmd build_merges;
  LabelCmd label(&threads);
  TrainBpeCmd train_bpe;
  SweepCmd sweep(&threads);
  GenChallengeCmd gen_challenge;
  SliceCmd slice;
  ScoreCmd score;
  AdversarialCmd adversarial;
  AuditSampleCmd audit_sample;
  build_lexicon.Register(&app);
  build_merges.Register(&app);
  label.Register(&app);
  train_bpe.Register(&app);
  sweep.Register(&app);
  gen_challenge.Register(&app);
  slice.Register(&app);
  score.Register(&app);
  adversarial.Register(&app);
  audit_sample.Register(&app);

  SetUpLogging("info");
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  } catch (const InputError& e) {
    spdlog::error("{}", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    spdlog::critical("internal error: {}", e.what());
    return kExitInternalError;
  }
  return kExitOk;
}

}  // namespace morphtok
