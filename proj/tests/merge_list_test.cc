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

#include "morphtok/merge_list.h"

#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "morphtok/rng.h"
#include "oracle.h"
#include "random_words.h"
#include "test_util.h"

namespace morphtok {
namespace {

using ::morphtok::testing::GoldenLexicon;
using Strings = std::vector<std::string>;

TEST(AlignMorphemesTest, AssignsDeletionsAndInsertionsToJunctions) {
  EXPECT_EQ(AlignMorphemes("motivated", {"_motive", "ate", "ed"}),
            (std::vector<size_t>{0, 5, 8, 9}));
  EXPECT_EQ(AlignMorphemes("swappiness", {"_swap", "y", "ness"}),
            (std::vector<size_t>{0, 4, 6, 10}));
  EXPECT_EQ(AlignMorphemes("theorizing", {"_theory", "ize", "ing"}),
            (std::vector<size_t>{0, 5, 7, 10}));
  EXPECT_EQ(AlignMorphemes("jogging", {"_jog", "ing"}),
            (std::vector<size_t>{0, 3, 7}));
  EXPECT_EQ(AlignMorphemes("neutralised", {"_neuter", "al", "ise", "ed"}),
            (std::vector<size_t>{0, 5, 7, 10, 11}));
}

TEST(AlignMorphemesTest, IdentityWhenSurfaceIsConcatenation) {
  EXPECT_EQ(AlignMorphemes("reforms", {"_re", "form", "s"}),
            (std::vector<size_t>{0, 2, 6, 7}));
}

TEST(AlignMorphemesTest, CountsCodePoints) {
  EXPECT_EQ(AlignMorphemes("\xc3\xa9t\xc3\xa9s", {"_\xc3\xa9t\xc3\xa9", "s"}),
            (std::vector<size_t>{0, 3, 4}));
}

TEST(ComposerTest, RetrievalBeatsAlignment) {
  const MorphLexicon lexicon = GoldenLexicon();
  Composer c("swappiness", {"_swap", "y", "ness"}, &lexicon.index());
  MergeUnit swap{"_swap", 0, 1, MergeSource::kCanonical};
  MergeUnit y{"y", 1, 2, MergeSource::kCanonical};
  MergeUnit ness{"ness", 2, 3, MergeSource::kCanonical};
  EXPECT_EQ(c.ComposePair(swap, y), "_swappy");
  // No record joins y and ness, so the aligned surface span wins.
  EXPECT_EQ(c.ComposePair(y, ness), "piness");
}

TEST(ComposerTest, TruncatedFormOnlyForProperPrefix) {
  const MorphLexicon lexicon = GoldenLexicon();
  Composer theorizing("theorizing", {"_theory", "ize", "ing"},
                      &lexicon.index());
  EXPECT_EQ(theorizing.TruncatedForm(1), "iz");
  EXPECT_EQ(theorizing.TruncatedForm(2), std::nullopt);
  EXPECT_EQ(theorizing.TruncatedForm(0), std::nullopt);
  Composer motivated("motivated", {"_motive", "ate", "ed"}, &lexicon.index());
  // "d" is a suffix of "ed", not a prefix.
  EXPECT_EQ(motivated.TruncatedForm(2), std::nullopt);
  EXPECT_EQ(motivated.TruncatedForm(1), std::nullopt);
}

TEST(MergeListTest, MotivatedGolden) {
  const MorphLexicon lexicon = GoldenLexicon();
  const auto lists = BuildMergeLists("motivated", lexicon);
  ASSERT_EQ(lists.size(), 1u);
  const std::map<std::string, std::string> expected = {
      {"_motive ate", "_motivate"},
      {"_motivate ed", "_motivated"},
      {"_motive ate ed", "_motivated"},
      {"ate ed", "ated"},
      {"_motive ated", "_motivated"},
  };
  EXPECT_EQ(lists[0].MergeEntries(), expected);
  for (const auto& unigram : {"_motive", "ate", "ed", "_motivate", "ated",
                              "_motivated"})
    EXPECT_EQ(lists[0].entries().at(unigram), unigram);
}

TEST(MergeListTest, SwappinessKeepsAlignedSpan) {
  const MorphLexicon lexicon = GoldenLexicon();
  const auto lists = BuildMergeLists("swappiness", lexicon);
  ASSERT_EQ(lists.size(), 1u);
  const auto merges = lists[0].MergeEntries();
  EXPECT_EQ(merges.at("_swap y"), "_swappy");
  EXPECT_EQ(merges.at("y ness"), "piness");
  EXPECT_EQ(merges.at("_swappy ness"), "_swappiness");
  EXPECT_EQ(lists[0].FormsOf(1, 3), (Strings{"piness"}));
}

TEST(MergeListTest, TwoMorphemeWordHasOnlyTheWholeWord) {
  const MorphLexicon lexicon = GoldenLexicon();
  const auto lists = BuildMergeLists("jogging", lexicon);
  ASSERT_EQ(lists.size(), 1u);
  const std::map<std::string, std::string> expected = {
      {"_jog ing", "_jogging"}};
  EXPECT_EQ(lists[0].MergeEntries(), expected);
}

TEST(MergeListTest, UnknownWordHasNoLists) {
  const MorphLexicon lexicon = GoldenLexicon();
  EXPECT_TRUE(BuildMergeLists("zebra", lexicon).empty());
}

TEST(MergeListTest, CompoundChainRetrievesIntermediateWords) {
  auto records = testing::GoldenRecords();
  auto add = [&](std::string word, std::string base, std::string affix) {
    SegmentationRecord r;
    r.word = std::move(word);
    r.kind = RecordKind::kDerivation;
    r.base = std::move(base);
    r.parts = {std::move(affix)};
    records.push_back(r);
  };
  add("copywriter", "copywrite", "er");
  add("copywriters", "copywriter", "s");
  SegmentationRecord copywrite;
  copywrite.word = "copywrite";
  copywrite.kind = RecordKind::kCompound;
  copywrite.parts = {"copy", "write"};
  records.push_back(copywrite);
  const MorphLexicon lexicon = MorphLexicon::Build(records);
  const auto lists = BuildMergeLists("copywriters", lexicon);
  ASSERT_FALSE(lists.empty());
  bool found = false;
  for (const auto& list : lists) {
    if (list.morphemes() != Strings{"_copy", "write", "er", "s"}) continue;
    found = true;
    const auto merges = list.MergeEntries();
    EXPECT_EQ(merges.at("_copy write"), "_copywrite");
    EXPECT_EQ(merges.at("_copywrite er"), "_copywriter");
    EXPECT_EQ(merges.at("_copywriter s"), "_copywriters");
  }
  EXPECT_TRUE(found);
}

TEST(EnumerateMergesTest, MotivatedByLength) {
  const MorphLexicon lexicon = GoldenLexicon();
  auto units = [&](int n) {
    std::vector<Strings> out;
    for (const auto& c : EnumerateMerges("motivated", lexicon, n))
      out.push_back(c.units);
    return out;
  };
  EXPECT_EQ(units(1), (std::vector<Strings>{{"_motivated"}}));
  EXPECT_EQ(units(2), (std::vector<Strings>{{"_motivate", "ed"},
                                            {"_motive", "ated"}}));
  EXPECT_EQ(units(3), (std::vector<Strings>{{"_motive", "ate", "ed"}}));
  EXPECT_TRUE(units(4).empty());
  EXPECT_TRUE(units(5).empty());
}

TEST(ForEachCompositionTest, LargerFirstGroupsFirst) {
  std::vector<std::vector<int>> seen;
  ForEachComposition(4, 2, [&](const std::vector<int>& s) { seen.push_back(s); });
  EXPECT_EQ(seen, (std::vector<std::vector<int>>{{3, 1}, {2, 2}, {1, 3}}));
  seen.clear();
  ForEachComposition(2, 3, [&](const std::vector<int>& s) { seen.push_back(s); });
  EXPECT_TRUE(seen.empty());
}

// Properties over random fixture words, checked against the brute-force
// oracle in oracle.h.
class RandomMergeTest : public ::testing::TestWithParam<uint64_t> {};

TEST_P(RandomMergeTest, LatticeMatchesOracle) {
  PortableRng rng(GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    const auto word = testing::MakeRandomWord(rng);
    const MorphLexicon lexicon = MorphLexicon::Build(word.records);
    const auto* segs = lexicon.Find(word.surface);
    ASSERT_NE(segs, nullptr) << word.surface;
    for (const auto& seg : *segs) {
      const MergeList list = BuildMergeList(word.surface, seg, lexicon.index());
      const Composer composer(word.surface, seg.morphemes, &lexicon.index());
      const auto oracle_keys = oracle::AllMergeKeys(composer);
      const auto merges = list.MergeEntries();

      // Same key set, and every value is an admissible form of its range.
      std::set<std::string> got_keys, want_keys;
      for (const auto& [k, v] : merges) got_keys.insert(k);
      for (const auto& [k, v] : oracle_keys) want_keys.insert(k);
      EXPECT_EQ(got_keys, want_keys) << word.surface;
      for (const auto& [k, v] : merges) {
        auto it = oracle_keys.find(k);
        if (it == oracle_keys.end()) continue;
        EXPECT_TRUE(it->second.count(v)) << word.surface << ": " << k << " -> " << v;
      }

      // The whole word maps to the marked word only.
      EXPECT_EQ(list.FormsOf(0, list.morpheme_count()),
                (Strings{AddMarker(word.surface)}));

      // Closure: every unit's form appears as an identity entry.
      for (const auto& u : list.units())
        EXPECT_EQ(list.entries().at(u.form), u.form);

      // UM(w,n) equals the enumerated Cartesian product for every n.
      for (int n = 1; n <= 5; ++n) {
        std::set<Strings> got;
        for (const auto& c : EnumerateMerges({list}, n)) got.insert(c.units);
        EXPECT_EQ(got, oracle::EnumerateUm(composer, n))
            << word.surface << " n=" << n;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomMergeTest,
                         ::testing::Values(1u, 7u, 42u, 2024u, 99991u));

}  // namespace
}  // namespace morphtok
