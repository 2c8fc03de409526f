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

#ifndef MORPHTOK_LABELLER_H_
#define MORPHTOK_LABELLER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphtok/lexicon.h"
#include "morphtok/merge_list.h"
#include "morphtok/vocabulary.h"

namespace morphtok {

enum class LabelValue { kVocab, kMorph, kAlien, kNa };

std::string_view LabelName(LabelValue value);
LabelValue ParseLabel(std::string_view name);

struct Label {
  LabelValue value = LabelValue::kNa;
  std::optional<int> mu;  // set for morph and alien

  friend bool operator==(const Label&, const Label&) = default;
};

// Highest number of positions at which `tokens` agrees with a UM(w,n)
// candidate of the given merge lists (n = tokens.size()). Computed by a
// dynamic program over group boundaries, never materializing UM(w,n).
// 0 when no candidate of that length exists.
int ComputeMu(const std::vector<MergeList>& lists,
              const std::vector<std::string>& tokens);

// The four-way decision: vocab if the word is a vocabulary entry, n/a if the
// lexicon does not know it, morph if mu >= n-1, alien otherwise.
class Labeller {
 public:
  // `vocabulary` may be null, in which case single-token sequences are
  // treated as vocabulary words.
  Labeller(const MorphLexicon* lexicon, const Vocabulary* vocabulary)
      : lexicon_(lexicon), vocabulary_(vocabulary) {}

  // Throws InputError when the tokens do not reassemble the word.
  Label LabelWord(std::string_view word, const SubwordSequence& subwords) const;

  // Same decision with the word's merge lists supplied by the caller.
  Label LabelWithLists(std::string_view word, const SubwordSequence& subwords,
                       const std::vector<MergeList>& lists) const;

  int Mu(std::string_view word, const SubwordSequence& subwords) const;

  const MorphLexicon& lexicon() const { return *lexicon_; }
  const Vocabulary* vocabulary() const { return vocabulary_; }

 private:
  bool IsVocabularyWord(std::string_view word,
                        const SubwordSequence& subwords) const;

  const MorphLexicon* lexicon_;
  const Vocabulary* vocabulary_;
};

}  // namespace morphtok

#endif  // MORPHTOK_LABELLER_H_
