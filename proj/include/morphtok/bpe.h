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

#ifndef MORPHTOK_BPE_H_
#define MORPHTOK_BPE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "morphtok/vocabulary.h"

namespace morphtok {

// Word type -> occurrence count.
using WordCounts = std::map<std::string, uint64_t>;

// Counts maximal runs of letters (ASCII letters, apostrophes inside a word,
// and any non-ASCII code point) in a text file.
WordCounts CountWords(const std::string& path, bool lowercase);

// The `n` most frequent words, ties broken by byte order of the word.
std::vector<std::pair<std::string, uint64_t>> TopWords(const WordCounts& counts,
                                                       size_t n);

// "word<TAB>count" lines; blank lines and '#' comments are skipped.
std::vector<std::pair<std::string, uint64_t>> ReadWordList(
    const std::string& path);
void WriteWordList(const std::string& path,
                   const std::vector<std::pair<std::string, uint64_t>>& words);

// Splits a word into initial BPE symbols: one per code point, with the word
// marker fused onto the first ("jog" -> "_j" "o" "g").
std::vector<std::string> InitialSymbols(std::string_view word);

struct BpeMerge {
  std::string left;
  std::string right;

  std::string Result() const { return left + right; }
  friend bool operator==(const BpeMerge&, const BpeMerge&) = default;
};

struct BpeCheckpoint {
  size_t size = 0;    // requested vocabulary size
  size_t merges = 0;  // merge rules in effect at that size

  friend bool operator==(const BpeCheckpoint&, const BpeCheckpoint&) = default;
};

struct BpeTokenization {
  SubwordSequence subwords;
  // Token positions holding a character outside the base alphabet. Such
  // characters pass through unmerged so the tokens still reassemble the word.
  std::vector<size_t> unknown_positions;

  bool has_unknown() const { return !unknown_positions.empty(); }
};

class BpeModel {
 public:
  BpeModel() = default;
  BpeModel(std::vector<std::string> alphabet, std::vector<BpeMerge> merges,
           std::vector<BpeCheckpoint> checkpoints);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<BpeMerge>& merges() const { return merges_; }
  const std::vector<BpeCheckpoint>& checkpoints() const { return checkpoints_; }

  // Distinct symbols after applying the first `merges` rules.
  size_t VocabularySize(size_t merges) const;
  // Number of merge rules needed to reach `size` distinct symbols, clamped to
  // [0, merges().size()].
  size_t MergesForSize(size_t size) const;
  Vocabulary VocabularyAt(size_t merges) const;

  // Replays the first `merges` rules in training order.
  BpeTokenization Tokenize(std::string_view word, size_t merges) const;
  BpeTokenization Tokenize(std::string_view word) const {
    return Tokenize(word, merges_.size());
  }

  nlohmann::json ToJson() const;
  static BpeModel FromJson(const nlohmann::json& doc);
  void Save(const std::string& path) const;
  static BpeModel Load(const std::string& path);

 private:
  void Index();

  std::vector<std::string> alphabet_;
  std::vector<BpeMerge> merges_;
  std::vector<BpeCheckpoint> checkpoints_;
  // symbol-count prefix: size_after_[m] = distinct symbols after m merges.
  std::vector<size_t> size_after_;
  // pair -> merge indices in increasing order.
  std::unordered_map<std::string, std::vector<size_t>> ranks_;
};

struct BpeTrainOptions {
  size_t max_size = 0;
  size_t checkpoint_step = 1000;
};

// Greedy most-frequent-pair BPE over a word-frequency table. Ties go to the
// lexicographically smallest (left, right) pair. Training stops early, with
// a warning, when no pair remains.
BpeModel TrainBpe(const WordCounts& counts, const BpeTrainOptions& options);

}  // namespace morphtok

#endif  // MORPHTOK_BPE_H_
