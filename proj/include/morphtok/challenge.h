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

#ifndef MORPHTOK_CHALLENGE_H_
#define MORPHTOK_CHALLENGE_H_

// Generators for the three out-of-vocabulary challenge tasks:
//   WaD  word vs. definition
//   WaM  word vs. morphology category (inflection, derivation, compound)
//   WaW  word vs. word relatedness

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "morphtok/lexicon.h"

namespace morphtok {

enum class Task { kWaD, kWaM, kWaW };
enum class Split { kTrain, kDev, kTest };

std::string_view TaskName(Task task);
Task ParseTask(std::string_view name);
std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

inline constexpr std::array<Split, 3> kSplits = {Split::kTrain, Split::kDev,
                                                 Split::kTest};

struct SplitSizes {
  size_t train = 0;
  size_t dev = 0;
  size_t test = 0;

  size_t operator[](Split s) const {
    return s == Split::kTrain ? train : s == Split::kDev ? dev : test;
  }
  size_t total() const { return train + dev + test; }
};

inline constexpr SplitSizes kWadSizes = {10500, 1500, 3000};
inline constexpr SplitSizes kWamSizes = {5400, 900, 1800};
inline constexpr SplitSizes kWawSizes = {5389, 582, 1133};

// One row of a challenge dataset. `first`/`second` hold (word, definition),
// (word, category) or (word_a, word_b) depending on the task. `provenance`
// is the original word for WaD dev/test negatives and the relation for WaW
// positives.
struct ChallengeInstance {
  std::string id;
  Task task = Task::kWaD;
  Split split = Split::kTrain;
  std::string first;
  std::string second;
  bool label = false;
  std::optional<std::string> provenance;

  nlohmann::json ToJson() const;
  static ChallengeInstance FromJson(const nlohmann::json& row);
  friend bool operator==(const ChallengeInstance&,
                         const ChallengeInstance&) = default;
};

// ---------------------------------------------------------------------------
// Inputs

struct SenseEntry {
  std::string word;
  std::string definition;
};

// "word<TAB>definition" lines (extra columns ignored, '#' comments skipped).
std::vector<SenseEntry> ReadSenseDump(const std::string& path);

inline constexpr std::array<std::string_view, 6> kRelations = {
    "sibling", "hypernym", "synonym", "antonym", "meronym", "substance"};

// Unordered word pairs keyed by relation.
class RelationPool {
 public:
  // Self-pairs are ignored; returns false for them.
  bool Add(std::string a, std::string b, std::string relation);
  bool Contains(std::string_view a, std::string_view b) const;
  // All distinct pairs (a < b) with their first recorded relation.
  const std::vector<std::array<std::string, 3>>& pairs() const { return pairs_; }
  std::vector<std::string> Words() const;
  size_t size() const { return pairs_.size(); }

 private:
  static std::string Key(std::string_view a, std::string_view b);
  std::unordered_set<std::string> keys_;
  std::vector<std::array<std::string, 3>> pairs_;
};

// "word_a<TAB>word_b<TAB>relation" lines; unknown relations are rejected.
RelationPool ReadRelationPool(const std::string& path);

inline constexpr std::array<std::string_view, 3> kCategories = {
    "inflection", "derivation", "compound"};

// word -> categories it exhibits.
using CategoryMap = std::map<std::string, std::set<std::string>>;

// "word<TAB>category" lines.
CategoryMap ReadCategories(const std::string& path);
// Categories implied by segmentation records (record kind of the word).
CategoryMap CategoriesFromRecords(const std::vector<SegmentationRecord>& records);

// word -> canonical subwords ("_" marker), plus the frequency-ranked
// subword list of the reference tokenizer.
struct ReferenceTokenization {
  std::unordered_map<std::string, std::vector<std::string>> words;
  std::vector<std::string> ranked_subwords;
};

// Tokenization file: "word<TAB>sub sub sub" or JSONL {word, subwords};
// ranked file: one subword per line, most frequent first.
ReferenceTokenization ReadReferenceTokenization(const std::string& tokens_path,
                                                const std::string& ranked_path);

// ---------------------------------------------------------------------------
// Generators

struct WadOptions {
  SplitSizes sizes = kWadSizes;
  uint64_t seed = 0;
  // Pre-filter hook over the sense dump; entries failing it are dropped.
  // Default keeps single-token alphabetic words with non-empty definitions.
  std::function<bool(const SenseEntry&)> prefilter;
  // Optional corpus frequencies for the similarity tie-break.
  std::unordered_map<std::string, uint64_t> frequencies;
};

bool DefaultSenseFilter(const SenseEntry& entry);

std::vector<ChallengeInstance> GenerateWaD(const std::vector<SenseEntry>& dump,
                                           const WadOptions& options);

struct WamOptions {
  SplitSizes sizes = kWamSizes;
  uint64_t seed = 0;
  size_t shared_subwords = 5000;
};

std::vector<ChallengeInstance> GenerateWaM(const CategoryMap& categories,
                                           const ReferenceTokenization& reference,
                                           const WamOptions& options);

struct WawOptions {
  SplitSizes sizes = kWawSizes;
  uint64_t seed = 0;
  int max_negative_retries = 1000;
};

std::vector<ChallengeInstance> GenerateWaW(const RelationPool& pool,
                                           const WawOptions& options);

// ---------------------------------------------------------------------------
// Output

struct InputChecksum {
  std::string path;
  std::string sha256;
};

// Writes <dir>/<task>-<split>.jsonl for each split plus <dir>/<task>-manifest.json
// recording the seed, requested and emitted sizes, and checksums of inputs
// and outputs. Returns the manifest.
nlohmann::json WriteChallenge(const std::string& dir, Task task,
                              const std::vector<ChallengeInstance>& instances,
                              const SplitSizes& requested, uint64_t seed,
                              const std::vector<InputChecksum>& inputs);

std::vector<ChallengeInstance> ReadChallengeJsonl(const std::string& path);

}  // namespace morphtok

#endif  // MORPHTOK_CHALLENGE_H_
