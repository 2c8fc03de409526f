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

#include "morphtok/label_io.h"

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "morphtok/common.h"
#include "test_util.h"

namespace morphtok {
namespace {

using Tokens = std::vector<std::string>;

TEST(RowFormatTest, FromPathAndName) {
  EXPECT_EQ(RowFormatForPath("words.TSV"), RowFormat::kTsv);
  EXPECT_EQ(RowFormatForPath("words.jsonl"), RowFormat::kJsonl);
  EXPECT_EQ(RowFormatForPath("words"), RowFormat::kJsonl);
  EXPECT_EQ(ParseRowFormat("tsv"), RowFormat::kTsv);
  EXPECT_THROW(ParseRowFormat("csv"), InputError);
}

TEST(ParseTokenizedRowTest, AcceptsBothTsvLayouts) {
  const auto tabs = ParseTokenizedRow("jogging\t_j\togging", RowFormat::kTsv);
  const auto spaced = ParseTokenizedRow("jogging\t_j ogging", RowFormat::kTsv);
  EXPECT_EQ(tabs.word, "jogging");
  EXPECT_EQ(tabs.subwords, (Tokens{"_j", "ogging"}));
  EXPECT_EQ(spaced.subwords, tabs.subwords);
  EXPECT_THROW(ParseTokenizedRow("jogging", RowFormat::kTsv), InputError);
}

TEST(ParseTokenizedRowTest, Jsonl) {
  const auto row = ParseTokenizedRow(
      R"({"word": "clerking", "subwords": ["▁clerk", "ing"]})", RowFormat::kJsonl);
  EXPECT_EQ(row.subwords, (Tokens{"▁clerk", "ing"}));
  EXPECT_THROW(ParseTokenizedRow(R"({"word": "x"})", RowFormat::kJsonl), InputError);
  EXPECT_THROW(ParseTokenizedRow(R"({"word": "x", "subwords": []})", RowFormat::kJsonl),
               InputError);
  EXPECT_THROW(ParseTokenizedRow("not json", RowFormat::kJsonl), InputError);
}

TEST(ReadTokenizedWordsTest, ErrorsCarryLineNumber) {
  const auto dir = testing::ScratchDir("label_io_read");
  const std::string path = (dir / "rows.tsv").string();
  WriteFile(path, "# header\njogging\t_j ogging\n\nbroken\n");
  try {
    ReadTokenizedWords(path, RowFormat::kTsv);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("rows.tsv:4"), std::string::npos) << e.what();
  }
}

TEST(ReadTokenizationTableTest, NormalizesMarkers) {
  const auto dir = testing::ScratchDir("label_io_table");
  const std::string path = (dir / "rows.tsv").string();
  WriteFile(path, "jogging\tjog ##ging\n");
  const auto table = ReadTokenizationTable(path, RowFormat::kTsv, MarkerScheme::kWordPiece);
  EXPECT_EQ(table.at("jogging").tokens, (Tokens{"_jog", "ging"}));
}

class LabelBatchTest : public ::testing::Test {
 protected:
  MorphLexicon lexicon_ = testing::GoldenLexicon();
  Vocabulary vocab_ = testing::LoadFixtureVocab("gpt_vocab.txt");
  Labeller labeller_{&lexicon_, &vocab_};

  std::vector<TokenizedWord> Rows() const {
    return {{"jogging", {"_j", "ogging"}},
            {"neutralised", {"_neutral", "ised"}},
            {"clerking", {"_cler", "king"}},
            {"unlisted", {"_un", "listed"}},
            {"stepstones", {"_step", "stones"}}};
  }
};

TEST_F(LabelBatchTest, PreservesOrderAcrossThreads) {
  const auto one = LabelBatch(labeller_, Rows(), MarkerScheme::kPlain, 1);
  const auto many = LabelBatch(labeller_, Rows(), MarkerScheme::kPlain, 4);
  ASSERT_EQ(one.size(), 5u);
  EXPECT_EQ(one, many);
  EXPECT_EQ(one[0].label.value, LabelValue::kAlien);
  EXPECT_EQ(one[1].label.value, LabelValue::kMorph);
  EXPECT_EQ(one[3].label.value, LabelValue::kNa);
  EXPECT_EQ(one[4].word, "stepstones");
}

TEST_F(LabelBatchTest, FirstBadRowIsReported) {
  auto rows = Rows();
  rows[2].subwords = {"_cler", "kin"};
  rows[4].subwords = {"_step"};
  try {
    LabelBatch(labeller_, rows, MarkerScheme::kPlain, 3);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("row 2 ('clerking')", 0), 0u) << e.what();
  }
}

TEST_F(LabelBatchTest, CanonicalJsonAndRoundTrip) {
  const auto labelled = LabelBatch(labeller_, Rows(), MarkerScheme::kPlain);
  EXPECT_EQ(CanonicalJsonLine(labelled[1]),
            R"({"label":"morph","mu":2,"subwords":["_neutral","ised"],"word":"neutralised"})");
  EXPECT_EQ(CanonicalJsonLine(labelled[3]),
            R"({"label":"na","mu":null,"subwords":["_un","listed"],"word":"unlisted"})");
  EXPECT_EQ(TsvLine(labelled[0]), "jogging\t_j ogging\talien\t0");

  const auto dir = testing::ScratchDir("label_io_roundtrip");
  for (RowFormat format : {RowFormat::kJsonl, RowFormat::kTsv}) {
    const std::string path = (dir / (format == RowFormat::kTsv ? "l.tsv" : "l.jsonl")).string();
    WriteLabels(path, labelled, format);
    EXPECT_EQ(ReadLabels(path, format), labelled);
  }
}

}  // namespace
}  // namespace morphtok
