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

#include "morphtok/labeller.h"

#include <algorithm>

#include "morphtok/common.h"

namespace morphtok {

std::string_view LabelName(LabelValue value) {
  switch (value) {
    case LabelValue::kVocab:
      return "vocab";
    case LabelValue::kMorph:
      return "morph";
    case LabelValue::kAlien:
      return "alien";
    case LabelValue::kNa:
      return "na";
  }
  return "na";
}

LabelValue ParseLabel(std::string_view name) {
  if (name == "vocab") return LabelValue::kVocab;
  if (name == "morph") return LabelValue::kMorph;
  if (name == "alien") return LabelValue::kAlien;
  if (name == "na" || name == "n/a" || name == "n.a") return LabelValue::kNa;
  throw InputError("unknown label: " + std::string(name));
}

namespace {

int MuForList(const MergeList& list, const std::vector<std::string>& tokens) {
  const int k = list.morpheme_count();
  const int n = static_cast<int>(tokens.size());
  if (n < 1 || n > k) return -1;
  // forms[b][e] for group [b, e)
  std::vector<std::vector<std::vector<std::string>>> forms(
      static_cast<size_t>(k), std::vector<std::vector<std::string>>(
                                  static_cast<size_t>(k) + 1));
  for (int b = 0; b < k; ++b)
    for (int e = b + 1; e <= k; ++e) forms[b][e] = list.GroupForms(b, e);

  // best[i][j]: max matches placing tokens[0, i) over morphemes [0, j).
  std::vector<std::vector<int>> best(static_cast<size_t>(n) + 1,
                                     std::vector<int>(static_cast<size_t>(k) + 1, -1));
  best[0][0] = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= k - (n - i); ++j) {
      for (int p = i - 1; p < j; ++p) {
        if (best[i - 1][p] < 0) continue;
        const auto& f = forms[p][j];
        if (f.empty()) continue;
        int hit = std::find(f.begin(), f.end(), tokens[i - 1]) != f.end() ? 1 : 0;
        best[i][j] = std::max(best[i][j], best[i - 1][p] + hit);
      }
    }
  }
  return best[n][k];
}

}  // namespace

int ComputeMu(const std::vector<MergeList>& lists,
              const std::vector<std::string>& tokens) {
  int mu = 0;
  for (const auto& list : lists) mu = std::max(mu, MuForList(list, tokens));
  return mu;
}

bool Labeller::IsVocabularyWord(std::string_view word,
                                const SubwordSequence& subwords) const {
  if (vocabulary_ == nullptr) return subwords.size() == 1;
  if (vocabulary_->contains(AddMarker(word))) return true;
  return subwords.size() == 1 && vocabulary_->contains(subwords.tokens[0]);
}

Label Labeller::LabelWithLists(std::string_view word,
                               const SubwordSequence& subwords,
                               const std::vector<MergeList>& lists) const {
  CheckReassembly(subwords, word);
  if (IsVocabularyWord(word, subwords)) return {LabelValue::kVocab, std::nullopt};
  if (!lexicon_->contains(word)) return {LabelValue::kNa, std::nullopt};
  const int n = subwords.size();
  const int mu = ComputeMu(lists, subwords.tokens);
  return {mu >= n - 1 ? LabelValue::kMorph : LabelValue::kAlien, mu};
}

Label Labeller::LabelWord(std::string_view word,
                          const SubwordSequence& subwords) const {
  CheckReassembly(subwords, word);
  if (IsVocabularyWord(word, subwords)) return {LabelValue::kVocab, std::nullopt};
  if (!lexicon_->contains(word)) return {LabelValue::kNa, std::nullopt};
  return LabelWithLists(word, subwords, BuildMergeLists(word, *lexicon_));
}

int Labeller::Mu(std::string_view word, const SubwordSequence& subwords) const {
  return ComputeMu(BuildMergeLists(word, *lexicon_), subwords.tokens);
}

}  // namespace morphtok
