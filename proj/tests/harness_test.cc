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

#include "morphtok/harness.h"

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "morphtok/common.h"
#include "test_util.h"

namespace morphtok {
namespace {

SubwordSequence Seq(std::vector<std::string> tokens) { return {std::move(tokens)}; }

TEST(PairGroupTest, OrderInsensitive) {
  EXPECT_EQ(PairGroup(LabelValue::kAlien, LabelValue::kMorph), "morph&alien");
  EXPECT_EQ(PairGroup(LabelValue::kMorph, LabelValue::kAlien), "morph&alien");
  EXPECT_EQ(PairGroup(LabelValue::kAlien, LabelValue::kVocab), "vocab&alien");
  EXPECT_EQ(PairGroup(LabelValue::kMorph, LabelValue::kVocab), "vocab&morph");
  EXPECT_EQ(PairGroup(LabelValue::kVocab, LabelValue::kVocab), "vocab&vocab");
  EXPECT_EQ(PairGroup(LabelValue::kNa, LabelValue::kVocab), kNaInvolvedGroup);
}

class AssignGroupsTest : public ::testing::Test {
 protected:
  MorphLexicon lexicon_ = testing::GoldenLexicon();
  Vocabulary vocab_ = testing::LoadFixtureVocab("gpt_vocab.txt");
  Labeller labeller_{&lexicon_, &vocab_};
  std::unordered_map<std::string, SubwordSequence> table_ = {
      {"jogging", Seq({"_j", "ogging"})},
      {"neutralised", Seq({"_neutral", "ised"})},
      {"theory", Seq({"_the", "ory"})},
      {"unlisted", Seq({"_un", "listed"})},
      {"swappiness", Seq({"_sw", "appiness"})}};
};

TEST_F(AssignGroupsTest, SingleAndPairGroups) {
  const std::vector<DatasetRow> rows = {
      {"a", {"jogging"}, true},
      {"b", {"neutralised", "jogging"}, false},
      {"c", {"jogging", "neutralised"}, true},
      {"d", {"unlisted", "jogging"}, true},
      {"e", {"jogging", "missing"}, false},
      {"f", {"swappiness", "jogging"}, true}};
  const auto groups = AssignGroups(rows, table_, labeller_);
  ASSERT_EQ(groups.size(), rows.size());
  EXPECT_EQ(groups[0].group, "alien");
  EXPECT_EQ(groups[1].group, "morph&alien");
  EXPECT_EQ(groups[2].group, "morph&alien");
  EXPECT_EQ(groups[3].group, kNaInvolvedGroup);
  EXPECT_EQ(groups[4].group, kExcludedGroup);
  EXPECT_TRUE(groups[4].excluded());
  EXPECT_EQ(groups[5].group, "alien&alien");

  const auto dir = testing::ScratchDir("harness_groups");
  const std::string path = (dir / "groups.jsonl").string();
  WriteGroups(path, groups);
  const auto back = ReadGroups(path);
  ASSERT_EQ(back.size(), groups.size());
  for (size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].group, groups[i].group);
    EXPECT_EQ(back[i].labels, groups[i].labels);
    EXPECT_EQ(back[i].reason, groups[i].reason);
  }
}

TEST(ReadDatasetTest, WordAndPairRows) {
  const auto dir = testing::ScratchDir("harness_dataset");
  const std::string path = (dir / "d.jsonl").string();
  WriteFile(path,
            R"({"id": "x1", "word": "jogging", "definition": "d", "label": true})" "\n"
            R"({"id": 7, "word_a": "a", "word_b": "b", "label": 0})" "\n");
  const auto rows = ReadDataset(path);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].words, (std::vector<std::string>{"jogging"}));
  EXPECT_TRUE(rows[0].gold);
  EXPECT_EQ(rows[1].id, "7");
  EXPECT_FALSE(rows[1].gold);
  WriteFile(path, R"({"id": "x", "word": "a", "label": 1})" "\n"
                  R"({"id": "x", "word": "b", "label": 1})" "\n");
  EXPECT_THROW(ReadDataset(path), InputError);
}

TEST(ReadPredictionsTest, HeaderAndBoolValues) {
  const auto dir = testing::ScratchDir("harness_preds");
  const std::string path = (dir / "p.csv").string();
  WriteFile(path, "id,pred\na,1\nb,False\nc,yes\n");
  const auto p = ReadPredictions(path);
  EXPECT_EQ(p.by_id, (std::map<std::string, bool>{{"a", true}, {"b", false}, {"c", true}}));
  WriteFile(path, "a,maybe\n");
  EXPECT_THROW(ReadPredictions(path), InputError);
}

// Builds a dataset with planted per-group accuracies.
struct Planted {
  std::vector<DatasetRow> rows;
  std::vector<GroupAssignment> groups;
  std::vector<PredictionFile> predictions;
};

Planted PlantAccuracies(const std::vector<std::pair<std::string, size_t>>& sizes,
                        const std::vector<std::vector<size_t>>& correct_per_seed) {
  Planted out;
  out.predictions.resize(correct_per_seed.size());
  size_t next = 0;
  for (size_t g = 0; g < sizes.size(); ++g) {
    for (size_t i = 0; i < sizes[g].second; ++i) {
      const std::string id = "r" + std::to_string(next++);
      const bool gold = i % 2 == 0;
      out.rows.push_back({id, {"w"}, gold});
      out.groups.push_back({id, sizes[g].first, {}, std::nullopt});
      for (size_t s = 0; s < correct_per_seed.size(); ++s) {
        out.predictions[s].name = "seed" + std::to_string(s);
        out.predictions[s].by_id[id] = i < correct_per_seed[s][g] ? gold : !gold;
      }
    }
  }
  return out;
}

TEST(ScoreTest, RecoversPlantedAccuracies) {
  const auto p = PlantAccuracies({{"vocab", 100}, {"morph", 40}, {"alien", 60}},
                                 {{90, 30, 36}, {90, 30, 36}, {80, 30, 30}});
  const auto report = Score(p.rows, p.groups, p.predictions);
  ASSERT_EQ(report.groups.size(), 3u);
  EXPECT_EQ(report.groups[0].group, "vocab");
  EXPECT_EQ(report.Find("morph")->mean, 75.0);
  EXPECT_EQ(report.Find("morph")->std, 0.0);
  EXPECT_DOUBLE_EQ(report.Find("vocab")->per_seed[2], 80.0);
  EXPECT_NEAR(report.Find("vocab")->mean, 260.0 / 3.0, 1e-12);
  EXPECT_NEAR(report.Find("vocab")->std, std::sqrt(200.0 / 9.0), 1e-12);
  EXPECT_DOUBLE_EQ(report.Find("alien")->coverage, 30.0);

  size_t counted = 0;
  for (const auto& g : report.groups) counted += g.count;
  EXPECT_EQ(counted, report.dataset_size);
  EXPECT_DOUBLE_EQ(report.total.per_seed[0], 100.0 * (90 + 30 + 36) / 200.0);

  const auto json = report.ToJson();
  EXPECT_EQ(json.at("metadata").at("std"), "population");
  EXPECT_NE(report.ToMarkdown().find("| morph | 40 | 20.00 | 75.00 ± 0.00 |"),
            std::string::npos)
      << report.ToMarkdown();
}

TEST(ScoreTest, IdMismatchIsFatal) {
  auto p = PlantAccuracies({{"vocab", 10}}, {{5}});
  p.predictions[0].by_id.erase("r3");
  p.predictions[0].by_id["zz"] = true;
  try {
    Score(p.rows, p.groups, p.predictions);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("1 missing (r3)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("1 unexpected (zz)"), std::string::npos) << msg;
  }
}

TEST(TextWordsTest, LetterRuns) {
  EXPECT_EQ(TextWords("Don't stop-jogging, 2 times!"),
            (std::vector<std::string>{"Don't", "stop", "jogging", "times"}));
}

// jogging is alien under [_j ogging]; shogging is alien under [_sh ogging]
// and shares the final subword, so it is a valid substitute.
class AdversarialTest : public ::testing::Test {
 protected:
  AdversarialTest() {
    auto records = testing::GoldenRecords();
    SegmentationRecord shog;
    shog.word = "shogging";
    shog.base = "shog";
    shog.parts = {"ing"};
    records.push_back(shog);
    SegmentationRecord flog = shog;
    flog.word = "flogging";
    flog.base = "flog";
    records.push_back(flog);
    lexicon_ = MorphLexicon::Build(records);
    tokens_ = {{"jogging", {"_j", "ogging"}},     {"shogging", {"_sh", "ogging"}},
               {"flogging", {"_flog", "ging"}},   {"clerking", {"_cler", "king"}},
               {"neutralised", {"_neutral", "ised"}}};
  }

  WordTokenizer Tokenizer() const {
    return [this](std::string_view w) -> std::optional<SubwordSequence> {
      auto it = tokens_.find(ToLower(w));
      if (it == tokens_.end()) return std::nullopt;
      return Seq(it->second);
    };
  }

  MorphLexicon lexicon_;
  std::map<std::string, std::vector<std::string>> tokens_;
};

TEST_F(AdversarialTest, SwapsAlienWordsOnly) {
  Labeller labeller(&lexicon_, nullptr);
  const std::vector<TextPair> inputs = {
      {"0", "Jogging is fun.", "They were jogging and clerking."},
      {"1", "The rules were neutralised.", "Nothing to swap here."}};
  const auto result = AdversarialSwap(inputs, Tokenizer(), labeller,
                                      {"shogging", "flogging", "jogging"}, 3);
  ASSERT_EQ(result.instances.size(), 1u);
  EXPECT_EQ(result.dropped, 1u);
  const auto& inst = result.instances[0];
  EXPECT_EQ(inst.adversarial.text_a, "Shogging is fun.");
  EXPECT_EQ(inst.adversarial.text_b, "They were shogging and clerking.");
  EXPECT_EQ(inst.substitutions,
            (std::map<std::string, std::string>{{"jogging", "shogging"}}));
  // clerking is alien but no candidate ends in "king".
  EXPECT_EQ(inst.unswapped, (std::vector<std::string>{"clerking"}));
  EXPECT_EQ(inst.ToJson().at("original").at("text_a"), "Jogging is fun.");

  const auto again = AdversarialSwap(inputs, Tokenizer(), labeller,
                                     {"shogging", "flogging", "jogging"}, 3);
  EXPECT_EQ(again.instances[0].ToJson(), inst.ToJson());
}

TEST(ReadTextPairsTest, FieldAliases) {
  const auto dir = testing::ScratchDir("harness_pairs");
  const std::string path = (dir / "p.jsonl").string();
  WriteFile(path, R"({"premise": "a b", "hypothesis": "c"})" "\n"
                  R"({"id": "q", "sentence1": "x", "sentence2": "y"})" "\n");
  const auto pairs = ReadTextPairs(path);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].id, "0");
  EXPECT_EQ(pairs[0].text_b, "c");
  EXPECT_EQ(pairs[1].id, "q");
  WriteFile(path, R"({"other": 1})" "\n");
  EXPECT_THROW(ReadTextPairs(path), InputError);
}

std::vector<LabelledWord> Corpus(size_t morph, size_t alien, size_t vocab) {
  std::vector<LabelledWord> out;
  auto add = [&](const std::string& prefix, size_t n, LabelValue v) {
    for (size_t i = 0; i < n; ++i) {
      LabelledWord w;
      w.word = prefix + std::to_string(i);
      w.subwords = Seq({"_" + w.word});
      w.label.value = v;
      if (v != LabelValue::kVocab) w.label.mu = 0;
      out.push_back(w);
      if (i % 7 == 0) out.push_back(w);  // duplicates must not double-count
    }
  };
  add("m", morph, LabelValue::kMorph);
  add("a", alien, LabelValue::kAlien);
  add("v", vocab, LabelValue::kVocab);
  return out;
}

TEST(AuditSampleTest, StratifiedAndReproducible) {
  const auto corpus = Corpus(400, 500, 100);
  AuditOptions opts;
  opts.seed = 11;
  const auto sample = AuditSample(corpus, opts);
  ASSERT_EQ(sample.size(), 300u);
  std::map<LabelValue, size_t> per_class;
  std::set<std::string> words;
  for (const auto& r : sample) {
    ++per_class[r.label.value];
    words.insert(r.word);
  }
  EXPECT_EQ(per_class[LabelValue::kMorph], 150u);
  EXPECT_EQ(per_class[LabelValue::kAlien], 150u);
  EXPECT_EQ(words.size(), 300u);
  EXPECT_EQ(AuditSample(corpus, opts), sample);
  opts.seed = 12;
  EXPECT_NE(AuditSample(corpus, opts), sample);
}

TEST(AuditSampleTest, UnderfullClassTakenWhole) {
  const auto sample = AuditSample(Corpus(20, 500, 0), AuditOptions{});
  EXPECT_EQ(sample.size(), 170u);
  const std::string tsv = AuditTsv(sample);
  EXPECT_EQ(tsv.rfind("word\tsubwords\tlabel\tmu\tannotator_label\tannotator_notes\n", 0),
            0u);
  EXPECT_NE(tsv.find("\n" + sample[0].word + "\t_" + sample[0].word + "\tmorph\t0\t\t\n"),
            std::string::npos);
  EXPECT_EQ(AuditTsv({}), "");
}

}  // namespace
}  // namespace morphtok
