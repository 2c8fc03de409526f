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

#include "morphtok/challenge.h"

#include <map>
#include <string>

#include "dataset_checker.h"
#include "gtest/gtest.h"
#include "morphtok/common.h"
#include "synthetic_data.h"
#include "test_util.h"

namespace morphtok {
namespace {

std::map<std::string, size_t> SizeMap(const SplitSizes& s) {
  return {{"train", s.train}, {"dev", s.dev}, {"test", s.test}};
}

std::string Violations(const testing::CheckReport& r) {
  return JoinStrings(r.violations, "\n");
}

TEST(ChallengeInstanceTest, JsonRoundTrip) {
  ChallengeInstance inst;
  inst.id = "wad-test-00001";
  inst.task = Task::kWaD;
  inst.split = Split::kTest;
  inst.first = "mouther";
  inst.second = "a wind from the south";
  inst.label = false;
  inst.provenance = "souther";
  const auto json = inst.ToJson();
  EXPECT_EQ(json.at("word"), "mouther");
  EXPECT_EQ(json.at("definition"), "a wind from the south");
  EXPECT_EQ(json.at("provenance"), "souther");
  EXPECT_EQ(ChallengeInstance::FromJson(json), inst);

  inst.task = Task::kWaW;
  inst.provenance.reset();
  EXPECT_TRUE(inst.ToJson().at("provenance").is_null());
  EXPECT_EQ(inst.ToJson().at("word_b"), "a wind from the south");
  EXPECT_THROW(ChallengeInstance::FromJson(nlohmann::json::object()), InputError);
}

TEST(RelationPoolTest, OrderInsensitiveAndNoSelfPairs) {
  RelationPool pool;
  EXPECT_TRUE(pool.Add("visitor", "traveler", "synonym"));
  EXPECT_FALSE(pool.Add("visitor", "visitor", "synonym"));
  EXPECT_TRUE(pool.Add("traveler", "visitor", "hypernym"));
  EXPECT_EQ(pool.size(), 1u);
  EXPECT_TRUE(pool.Contains("traveler", "visitor"));
  EXPECT_TRUE(pool.Contains("visitor", "traveler"));
  EXPECT_FALSE(pool.Contains("poorer", "proxy"));
}

TEST(ChallengeInputsTest, ReadersValidate) {
  const auto dir = testing::ScratchDir("challenge_inputs");
  const std::string senses = (dir / "senses.tsv").string();
  WriteFile(senses,
            "# word\tdefinition\nclerking\tthe activity of recording business "
            "transactions\nbroken line\n");
  const auto dump = ReadSenseDump(senses);
  ASSERT_EQ(dump.size(), 1u);
  EXPECT_EQ(dump[0].word, "clerking");

  const std::string pool = (dir / "pool.tsv").string();
  WriteFile(pool, "visitor\ttraveler\tsynonym\n");
  EXPECT_TRUE(ReadRelationPool(pool).Contains("traveler", "visitor"));
  WriteFile(pool, "visitor\ttraveler\tcousin\n");
  EXPECT_THROW(ReadRelationPool(pool), InputError);

  const std::string cats = (dir / "cats.tsv").string();
  WriteFile(cats, "coteaches\tinflection\nsharemarkets\tcompound\n");
  const auto cm = ReadCategories(cats);
  EXPECT_TRUE(cm.at("coteaches").count("inflection"));
  WriteFile(cats, "coteaches\tblend\n");
  EXPECT_THROW(ReadCategories(cats), InputError);

  const std::string toks = (dir / "toks.tsv").string();
  const std::string ranked = (dir / "ranked.txt").string();
  WriteFile(toks, "coteaches\t_co teach es\n{\"word\": \"jogging\", \"subwords\": [\"_j\", \"ogging\"]}\n");
  WriteFile(ranked, "es\n_co\n");
  const auto ref = ReadReferenceTokenization(toks, ranked);
  EXPECT_EQ(ref.words.at("coteaches"), (std::vector<std::string>{"_co", "teach", "es"}));
  EXPECT_EQ(ref.words.at("jogging"), (std::vector<std::string>{"_j", "ogging"}));
  EXPECT_EQ(ref.ranked_subwords, (std::vector<std::string>{"es", "_co"}));
}

TEST(CategoriesTest, FromRecordKinds) {
  const auto cats = CategoriesFromRecords(testing::GoldenRecords());
  EXPECT_EQ(cats.at("stepstone"), (std::set<std::string>{"compound"}));
  EXPECT_EQ(cats.at("motivate"), (std::set<std::string>{"derivation"}));
  EXPECT_EQ(cats.at("jogging"), (std::set<std::string>{"inflection"}));
}

TEST(GenerateWaDTest, SatisfiesConstraintsAndIsReproducible) {
  const auto dump = testing::SyntheticSenseDump(4, 3000);
  const SplitSizes sizes{700, 100, 200};
  WadOptions opts;
  opts.sizes = sizes;
  opts.seed = 12;
  const auto rows = GenerateWaD(dump, opts);
  const auto dir = testing::ScratchDir("wad");
  const auto manifest = WriteChallenge(dir.string(), Task::kWaD, rows, sizes, 12,
                                       {{"senses.tsv", "abc"}});
  EXPECT_EQ(manifest.at("seed"), 12);
  EXPECT_EQ(manifest.at("sizes").at("test"), 200);

  std::multimap<std::string, std::string> senses;
  for (const auto& e : dump) senses.emplace(e.word, e.definition);
  const auto report = testing::CheckWaD(dir.string(), SizeMap(sizes), senses);
  EXPECT_TRUE(report.ok()) << Violations(report);

  // Dev/test negatives use the nearest available word: no word emitted in
  // the same split is strictly closer to the original (next-nearest
  // fallbacks on collisions are rare).
  std::map<Split, std::set<std::string>> split_words;
  std::map<std::string, std::set<std::string>> defs_of;
  for (const auto& e : dump) defs_of[e.word].insert(e.definition);
  for (const auto& r : rows) split_words[r.split].insert(r.first);
  auto norm = [](const std::string& a, const std::string& b) {
    return static_cast<double>(EditDistance(a, b)) /
           static_cast<double>(std::max(Utf8Length(a), Utf8Length(b)));
  };
  size_t nearest = 0, negatives = 0;
  for (const auto& r : rows) {
    if (r.split == Split::kTrain || r.label) continue;
    ++negatives;
    const double d = norm(r.first, *r.provenance);
    bool beaten = false;
    for (const auto& w : split_words[r.split])
      beaten = beaten || (w != *r.provenance && !defs_of[w].count(r.second) &&
                          norm(w, *r.provenance) < d);
    nearest += beaten ? 0 : 1;
  }
  EXPECT_GE(nearest * 100, negatives * 95);

  const auto again = GenerateWaD(dump, opts);
  EXPECT_EQ(again, rows);
  opts.seed = 13;
  EXPECT_NE(GenerateWaD(dump, opts), rows);
}

TEST(GenerateWaDTest, PrefilterHookDropsEntries) {
  const auto dump = testing::SyntheticSenseDump(4, 400);
  WadOptions opts;
  opts.sizes = {60, 10, 10};
  opts.prefilter = [](const SenseEntry& e) { return e.word[0] != 'a'; };
  for (const auto& r : GenerateWaD(dump, opts)) {
    EXPECT_NE(r.first[0], 'a');
    if (r.provenance) {
      EXPECT_NE((*r.provenance)[0], 'a');
    }
  }
}

TEST(GenerateWaMTest, SatisfiesConstraints) {
  const auto inputs = testing::SyntheticWamInputs(6, 4000, 2500);
  const SplitSizes sizes{600, 120, 240};
  WamOptions opts;
  opts.sizes = sizes;
  opts.seed = 3;
  opts.shared_subwords = 800;
  const auto rows = GenerateWaM(inputs.categories, inputs.reference, opts);
  const auto dir = testing::ScratchDir("wam");
  WriteChallenge(dir.string(), Task::kWaM, rows, sizes, 3, {});
  const auto report =
      testing::CheckWaM(dir.string(), SizeMap(sizes), inputs.categories,
                        inputs.reference.words, inputs.reference.ranked_subwords, 800);
  EXPECT_TRUE(report.ok()) << Violations(report);
  EXPECT_EQ(GenerateWaM(inputs.categories, inputs.reference, opts), rows);
}

TEST(GenerateWaMTest, ShrinksWhenUnsatisfiable) {
  const auto inputs = testing::SyntheticWamInputs(6, 200, 400);
  WamOptions opts;
  opts.sizes = {5400, 900, 1800};
  opts.shared_subwords = 100;
  const auto rows = GenerateWaM(inputs.categories, inputs.reference, opts);
  EXPECT_LT(rows.size(), opts.sizes.total());
  std::map<Split, long> balance;
  for (const auto& r : rows) balance[r.split] += r.label ? 1 : -1;
  for (const auto& [split, b] : balance) EXPECT_LE(std::abs(b), 1);
}

TEST(GenerateWaWTest, SatisfiesConstraints) {
  const auto pool = testing::SyntheticRelationPool(9, 2000, 12000);
  const SplitSizes sizes{539, 58, 113};
  WawOptions opts;
  opts.sizes = sizes;
  opts.seed = 5;
  const auto rows = GenerateWaW(pool, opts);
  const auto dir = testing::ScratchDir("waw");
  WriteChallenge(dir.string(), Task::kWaW, rows, sizes, 5, {});
  const auto report = testing::CheckWaW(dir.string(), SizeMap(sizes), pool.pairs());
  EXPECT_TRUE(report.ok()) << Violations(report);
  for (const auto& r : rows)
    if (r.label) {
      EXPECT_TRUE(r.provenance.has_value());
    }
}

TEST(WriteChallengeTest, ByteIdenticalRerun) {
  const auto pool = testing::SyntheticRelationPool(9, 500, 3000);
  WawOptions opts;
  opts.sizes = {100, 20, 20};
  const auto a = testing::ScratchDir("waw_a");
  const auto b = testing::ScratchDir("waw_b");
  WriteChallenge(a.string(), Task::kWaW, GenerateWaW(pool, opts), opts.sizes, 0, {});
  WriteChallenge(b.string(), Task::kWaW, GenerateWaW(pool, opts), opts.sizes, 0, {});
  for (const char* f : {"waw-train.jsonl", "waw-dev.jsonl", "waw-test.jsonl",
                        "waw-manifest.json"})
    EXPECT_EQ(ReadFile((a / f).string()), ReadFile((b / f).string())) << f;
  EXPECT_EQ(ReadChallengeJsonl((a / "waw-dev.jsonl").string()).size(), 20u);
}

}  // namespace
}  // namespace morphtok
