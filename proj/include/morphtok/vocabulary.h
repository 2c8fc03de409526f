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

#ifndef MORPHTOK_VOCABULARY_H_
#define MORPHTOK_VOCABULARY_H_

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace morphtok {

// How a tokenizer marks word-initial or word-internal pieces.
//  kSentencePiece: "▁jog" "ging"   kByteLevel: "Ġjog" "ging"
//  kWordPiece:     "jog" "##ging"   kPlain:     "_jog" "ging"
enum class MarkerScheme { kSentencePiece, kByteLevel, kWordPiece, kPlain };

std::string_view MarkerSchemeName(MarkerScheme scheme);
MarkerScheme ParseMarkerScheme(std::string_view name);

// One word's tokenization under the canonical "_" marker scheme.
struct SubwordSequence {
  std::vector<std::string> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  // Concatenation with the marker removed.
  std::string Surface() const;
  friend bool operator==(const SubwordSequence&,
                         const SubwordSequence&) = default;
};

// Converts one word's raw tokenizer output to the canonical scheme. Throws
// InputError for empty input, empty pieces, or markers in the wrong place.
SubwordSequence NormalizeSubwords(const std::vector<std::string>& raw,
                                  MarkerScheme scheme);

// Throws InputError unless the tokens reassemble `word` (exactly, or up to
// ASCII case for uncased tokenizers).
void CheckReassembly(const SubwordSequence& seq, std::string_view word);

// Canonical form of a vocabulary entry: word-initial pieces carry "_".
std::string NormalizeVocabToken(std::string_view token, MarkerScheme scheme);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Tokens are taken as canonical already.
  explicit Vocabulary(const std::vector<std::string>& tokens);

  // Adds a canonical token; returns false if it was already present.
  bool Insert(std::string token);
  bool contains(std::string_view token) const {
    return tokens_.count(std::string(token)) > 0;
  }
  size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

 private:
  std::unordered_set<std::string> tokens_;
};

enum class VocabFormat { kTokenPerLine, kTokenizerJson };

VocabFormat ParseVocabFormat(std::string_view name);

// Loads and normalizes a vocabulary file. A token-per-line file may carry
// extra tab-separated columns (scores), which are ignored. Tokenizer JSON is
// the common tokenizer.json layout: model.vocab as an object (BPE,
// WordPiece) or as a list of [piece, score] pairs (Unigram). Duplicates after
// normalization collapse with a warning; an empty result throws InputError.
Vocabulary LoadVocab(const std::string& path, VocabFormat format,
                     MarkerScheme scheme);

}  // namespace morphtok

#endif  // MORPHTOK_VOCABULARY_H_
