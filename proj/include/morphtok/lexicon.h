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

#ifndef MORPHTOK_LEXICON_H_
#define MORPHTOK_LEXICON_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace morphtok {

enum class RecordKind { kInflection, kDerivation, kCompound };

std::string_view RecordKindName(RecordKind kind);
RecordKind ParseRecordKind(std::string_view name);

// Where the affix of an inflection/derivation record attaches to its base.
// In the TSV files "-ed" is a suffix, "re-" a prefix, and a bare "write" a
// right-attached part.
enum class AffixPosition { kSuffix, kPrefix };

struct SegmentationRecord {
  std::string word;
  RecordKind kind = RecordKind::kInflection;
  std::string base;                // empty for compounds
  std::vector<std::string> parts;  // the affix, or the compound's parts
  AffixPosition position = AffixPosition::kSuffix;
  std::string features;            // carried opaquely, e.g. "V;PST"

  const std::string& affix() const { return parts.front(); }
  friend bool operator==(const SegmentationRecord&,
                         const SegmentationRecord&) = default;
};

struct RejectedLine {
  std::string path;
  size_t line_number = 0;
  std::string text;
  std::string reason;
};

struct ParseResult {
  std::vector<SegmentationRecord> records;
  std::vector<RejectedLine> rejects;
};

// Input file layouts of the normalized interchange format.
//  kUnimorphTsv:  word<TAB>base<TAB>affix[<TAB>features]
//  kCompoundTsv:  word<TAB>part part part...
enum class RecordFormat { kUnimorphTsv, kCompoundTsv };

// Parses one line; returns std::nullopt for blank lines. Throws InputError
// with the reason for malformed lines.
std::optional<SegmentationRecord> ParseRecordLine(std::string_view line,
                                                  RecordFormat format,
                                                  RecordKind unimorph_kind);

// Parses every file. Unreadable files throw InputError; malformed lines are
// logged and returned in ParseResult::rejects.
ParseResult ParseRecords(const std::vector<std::string>& paths,
                         RecordFormat format,
                         RecordKind unimorph_kind = RecordKind::kInflection);

// CSV with columns path,line,reason,text.
void WriteRejectReport(const std::string& path,
                       const std::vector<RejectedLine>& rejects);

struct MorphemeSegmentation {
  std::string word;
  // Canonical morphemes; only the first carries the word-initial marker.
  std::vector<std::string> morphemes;
  std::vector<RecordKind> provenance;

  friend bool operator==(const MorphemeSegmentation&,
                         const MorphemeSegmentation&) = default;
};

// Lookup structure over parsed records.
class RecordIndex {
 public:
  RecordIndex() = default;
  explicit RecordIndex(std::vector<SegmentationRecord> records);

  const std::vector<SegmentationRecord>& records() const { return records_; }

  // Records whose surface word is `word`, in input order.
  std::vector<const SegmentationRecord*> RecordsFor(std::string_view word) const;
  bool HasRecords(std::string_view word) const;
  bool HasRecordsOfKind(std::string_view word, RecordKind kind) const;

  // Surface words stated by records that attach `right` to `left`: either a
  // suffix record with base=left and affix=right, or a prefix record with
  // affix=left and base=right. Inputs carry no marker.
  std::vector<std::string> Retrieve(std::string_view left,
                                    std::string_view right) const;

  // Distinct surface words having at least one record, sorted.
  std::vector<std::string> Words() const;

 private:
  std::vector<SegmentationRecord> records_;
  std::unordered_map<std::string, std::vector<size_t>> by_word_;
  std::unordered_map<std::string, std::vector<size_t>> by_pair_;
};

struct ResolveOptions {
  int max_depth = 16;
};

// Expands inflection/derivation chains down to roots; compound parts are
// further expanded when derivation records exist for them. Every distinct
// analysis is returned. Paths that hit a cycle or the depth cap are dropped
// and reported through `diagnostics`. Words without records yield {}.
std::vector<MorphemeSegmentation> ResolveSegmentation(
    std::string_view word, const RecordIndex& index,
    const ResolveOptions& options = {},
    std::vector<std::string>* diagnostics = nullptr);

enum class CasePolicy { kExact, kExactThenLower, kLower };

std::string_view CasePolicyName(CasePolicy policy);
CasePolicy ParseCasePolicy(std::string_view name);

// Immutable word -> segmentations map; safe for concurrent readers.
class MorphLexicon {
 public:
  static constexpr int kFormatVersion = 1;

  MorphLexicon() = default;

  static MorphLexicon Build(std::vector<SegmentationRecord> records,
                            CasePolicy policy = CasePolicy::kExactThenLower,
                            const ResolveOptions& options = {},
                            std::vector<std::string>* diagnostics = nullptr);

  bool contains(std::string_view word) const { return Find(word) != nullptr; }

  // Segmentations of `word` under the case policy, or nullptr.
  const std::vector<MorphemeSegmentation>* Find(std::string_view word) const;
  // The stored key `word` resolves to under the case policy.
  std::optional<std::string> ResolveKey(std::string_view word) const;

  const std::map<std::string, std::vector<MorphemeSegmentation>>& entries()
      const {
    return entries_;
  }
  const RecordIndex& index() const { return index_; }
  CasePolicy case_policy() const { return policy_; }
  size_t size() const { return entries_.size(); }

  nlohmann::json ToJson() const;
  static MorphLexicon FromJson(const nlohmann::json& doc);
  void Save(const std::string& path) const;
  static MorphLexicon Load(const std::string& path);

 private:
  CasePolicy policy_ = CasePolicy::kExactThenLower;
  RecordIndex index_;
  std::map<std::string, std::vector<MorphemeSegmentation>> entries_;
};

}  // namespace morphtok

#endif  // MORPHTOK_LEXICON_H_
