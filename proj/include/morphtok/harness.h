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

#ifndef MORPHTOK_HARNESS_H_
#define MORPHTOK_HARNESS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "morphtok/label_io.h"
#include "morphtok/labeller.h"
#include "morphtok/vocabulary.h"

namespace morphtok {

// ---------------------------------------------------------------------------
// Group assignment

// A dataset row reduced to what grouping and scoring need. Single-word tasks
// (including word-in-context sets) carry one word, pair tasks two.
struct DatasetRow {
  std::string id;
  std::vector<std::string> words;
  bool gold = false;
};

// JSONL rows with "id", "label" and either "word_a"/"word_b" or "word".
std::vector<DatasetRow> ReadDataset(const std::string& path);

inline constexpr char kExcludedGroup[] = "excluded";
inline constexpr char kNaInvolvedGroup[] = "na-involved";

// Report order: single-word groups, pair groups, then the remainder buckets.
const std::vector<std::string>& GroupOrder();

// Unordered pair group, e.g. (alien, morph) -> "morph&alien"; any na gives
// "na-involved".
std::string PairGroup(LabelValue a, LabelValue b);

struct GroupAssignment {
  std::string id;
  std::string group;
  std::vector<LabelValue> labels;
  // Set when the row is excluded (missing tokenization).
  std::optional<std::string> reason;

  bool excluded() const { return reason.has_value(); }
  nlohmann::json ToJson() const;
  static GroupAssignment FromJson(const nlohmann::json& row);
};

std::vector<GroupAssignment> AssignGroups(
    const std::vector<DatasetRow>& dataset,
    const std::unordered_map<std::string, SubwordSequence>& tokenizations,
    const Labeller& labeller);

void WriteGroups(const std::string& path,
                 const std::vector<GroupAssignment>& groups);
std::vector<GroupAssignment> ReadGroups(const std::string& path);

// ---------------------------------------------------------------------------
// Scoring

struct PredictionFile {
  std::string name;
  std::map<std::string, bool> by_id;
};

// CSV "id,pred" with an optional header row. Predictions may be
// true/false, 1/0 or yes/no.
PredictionFile ReadPredictions(const std::string& path);

struct GroupStats {
  std::string group;
  size_t count = 0;
  double coverage = 0;               // percent of the dataset
  std::vector<double> per_seed;      // accuracy percent per prediction file
  double mean = 0;
  double std = 0;                    // population standard deviation
};

struct EvaluationReport {
  std::vector<GroupStats> groups;    // in GroupOrder(), empty groups omitted
  GroupStats total;
  size_t dataset_size = 0;
  size_t excluded = 0;
  nlohmann::json metadata;

  const GroupStats* Find(std::string_view group) const;
  nlohmann::json ToJson() const;
  std::string ToMarkdown() const;
};

// Throws InputError when ids disagree between the dataset, the groups and
// any prediction file; the message summarizes the difference.
EvaluationReport Score(const std::vector<DatasetRow>& dataset,
                       const std::vector<GroupAssignment>& groups,
                       const std::vector<PredictionFile>& predictions,
                       nlohmann::json metadata = nlohmann::json::object());

// ---------------------------------------------------------------------------
// Adversarial substitution

struct TextPair {
  std::string id;
  std::string text_a;
  std::string text_b;
};

// JSONL with text_a/text_b (premise/hypothesis and sentence1/sentence2 are
// accepted too) and an optional id; missing ids become the row index.
std::vector<TextPair> ReadTextPairs(const std::string& path);

// Returns the word's subwords, or nullopt when it cannot be tokenized.
using WordTokenizer = std::function<std::optional<SubwordSequence>(std::string_view)>;

struct AdversarialInstance {
  TextPair original;
  TextPair adversarial;
  std::map<std::string, std::string> substitutions;
  // Alien words left unchanged because no candidate qualified.
  std::vector<std::string> unswapped;

  nlohmann::json ToJson() const;
};

struct AdversarialResult {
  std::vector<AdversarialInstance> instances;
  size_t dropped = 0;  // inputs without any substitution
  size_t unswapped_words = 0;
};

// Replaces every alien-labelled word with a different candidate that is also
// alien under the same tokenizer and vocabulary and ends in the same subword.
AdversarialResult AdversarialSwap(const std::vector<TextPair>& inputs,
                                  const WordTokenizer& tokenizer,
                                  const Labeller& labeller,
                                  const std::vector<std::string>& candidates,
                                  uint64_t seed);

// Letter runs of a text (ASCII letters, non-ASCII bytes, inner apostrophes).
std::vector<std::string> TextWords(std::string_view text);

// ---------------------------------------------------------------------------
// Audit sample

struct AuditOptions {
  size_t per_class = 150;
  std::vector<LabelValue> classes = {LabelValue::kMorph, LabelValue::kAlien};
  uint64_t seed = 0;
};

// Stratified uniform sample of distinct words; underfull classes are taken
// whole with a warning.
std::vector<LabelledWord> AuditSample(const std::vector<LabelledWord>& corpus,
                                      const AuditOptions& options);

// word, subwords, label, mu, then blank annotator columns. Empty when there
// are no rows.
std::string AuditTsv(const std::vector<LabelledWord>& rows);

}  // namespace morphtok

#endif  // MORPHTOK_HARNESS_H_
