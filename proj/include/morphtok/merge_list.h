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

#ifndef MORPHTOK_MERGE_LIST_H_
#define MORPHTOK_MERGE_LIST_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphtok/common.h"
#include "morphtok/lexicon.h"

namespace morphtok {

// Splits `surface` into one contiguous piece per canonical morpheme using a
// minimum-edit alignment of the concatenated morphemes against the surface
// word. Returns k+1 code-point offsets (k = morpheme count); piece m is
// [result[m], result[m+1]). Markers on the morphemes are ignored.
//
// Equal-cost alignments are ranked by junction penalties: deleting the first
// character of a non-initial morpheme is free, deleting a morpheme's last
// character costs 1 and an interior one 2; inserting a surface character at a
// morpheme junction is free when it repeats the preceding surface character
// (gemination), 1 otherwise, and 2 inside a morpheme. Characters inserted at
// a junction belong to the right-hand morpheme.
std::vector<size_t> AlignMorphemes(std::string_view surface,
                                   const std::vector<std::string>& morphemes);

enum class MergeSource { kCanonical, kRetrieved, kAligned };

std::string_view MergeSourceName(MergeSource source);

// A unit of a word's merge lattice: a form covering morphemes [begin, end).
struct MergeUnit {
  std::string form;
  int begin = 0;
  int end = 0;
  MergeSource source = MergeSource::kCanonical;

  friend bool operator==(const MergeUnit&, const MergeUnit&) = default;
};

// Composition primitives for one analysis of one word.
class Composer {
 public:
  Composer(std::string word, std::vector<std::string> morphemes,
           const RecordIndex* index);

  const std::string& word() const { return word_; }
  const std::vector<std::string>& morphemes() const { return morphemes_; }
  int morpheme_count() const { return static_cast<int>(morphemes_.size()); }
  const std::vector<size_t>& boundaries() const { return boundaries_; }

  // Surface substring spanned by morphemes [begin, end), marked when
  // begin == 0. std::nullopt when the span is empty.
  std::optional<std::string> AlignedForm(int begin, int end) const;

  // Canonical results of records attaching `right` to `left` (marker
  // follows `left`).
  std::vector<std::string> RetrievedForms(std::string_view left,
                                          std::string_view right) const;

  // Every form produced by merging two adjacent units: retrieved forms first,
  // then the aligned form when it differs. The full span always yields the
  // marked surface word only.
  std::vector<std::pair<std::string, MergeSource>> MergeForms(
      const MergeUnit& left, const MergeUnit& right) const;

  // Retrieval first, alignment fallback. std::nullopt when neither applies
  // (degenerate alignment with no record).
  std::optional<std::string> ComposePair(const MergeUnit& left,
                                         const MergeUnit& right) const;

  // Aligned surface form of a non-initial single morpheme when it is a
  // non-empty proper prefix of the canonical morpheme (ize -> iz).
  std::optional<std::string> TruncatedForm(int morpheme) const;

  bool IsFullSpan(int begin, int end) const {
    return begin == 0 && end == morpheme_count();
  }
  std::string MarkedWord() const { return AddMarker(word_); }

 private:
  std::string word_;
  std::vector<std::string> morphemes_;
  const RecordIndex* index_;
  std::vector<std::string> surface_chars_;
  std::vector<size_t> boundaries_;
};

struct MergeBuildOptions {
  // Iteration guard is 4^k rounds for k morphemes, capped here.
  size_t max_rounds = 1u << 20;
};

// The morphological merge list of one analysis.
class MergeList {
 public:
  const std::string& word() const { return word_; }
  const std::vector<std::string>& morphemes() const { return morphemes_; }
  int morpheme_count() const { return static_cast<int>(morphemes_.size()); }

  // Key (space-joined units) -> merged form. Includes unigram identities.
  const std::map<std::string, std::string>& entries() const { return entries_; }
  // Entries whose key has at least two units.
  std::map<std::string, std::string> MergeEntries() const;

  // Lattice units in discovery order.
  const std::vector<MergeUnit>& units() const { return units_; }

  // Distinct forms for morphemes [begin, end), primary first.
  std::vector<std::string> FormsOf(int begin, int end) const;
  std::optional<std::string> PrimaryForm(int begin, int end) const;

  // Forms a contiguous group [begin, end) may take inside a UM(w,n)
  // candidate: the canonical morpheme (plus its truncated surface variant)
  // for single morphemes, every lattice form otherwise.
  std::vector<std::string> GroupForms(int begin, int end) const;

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  friend MergeList BuildMergeList(const std::string&,
                                  const MorphemeSegmentation&,
                                  const RecordIndex&,
                                  const MergeBuildOptions&);

  std::string word_;
  std::vector<std::string> morphemes_;
  std::vector<MergeUnit> units_;
  // span -> forms in discovery order, primary first.
  std::map<std::pair<int, int>, std::vector<std::string>> span_forms_;
  std::map<int, std::string> truncated_;
  std::map<std::string, std::string> entries_;
  std::vector<std::string> diagnostics_;
};

// Builds the merge list by merging adjacent units until no new unit appears.
// Throws InternalError if the iteration guard trips.
MergeList BuildMergeList(const std::string& word,
                         const MorphemeSegmentation& segmentation,
                         const RecordIndex& index,
                         const MergeBuildOptions& options = {});

// One merge list per analysis of `word`; empty when the word is unknown.
std::vector<MergeList> BuildMergeLists(std::string_view word,
                                       const MorphLexicon& lexicon);

struct MergeCandidate {
  std::vector<std::string> units;
  MergeSource source = MergeSource::kRetrieved;

  friend bool operator==(const MergeCandidate&,
                         const MergeCandidate&) = default;
};

// UM(w,n): every n-unit sequence obtained by cutting some analysis into n
// contiguous groups and replacing each group with one of its forms.
std::vector<MergeCandidate> EnumerateMerges(const std::vector<MergeList>& lists,
                                            int n);
std::vector<MergeCandidate> EnumerateMerges(std::string_view word,
                                            const MorphLexicon& lexicon,
                                            int n);

// Visits the compositions of `total` into `parts` positive sizes, larger
// first groups first. The callback receives the group sizes.
template <typename Fn>
void ForEachComposition(int total, int parts, Fn&& fn) {
  std::vector<int> sizes;
  auto rec = [&](auto& self, int remaining, int left) -> void {
    if (left == 1) {
      sizes.push_back(remaining);
      fn(static_cast<const std::vector<int>&>(sizes));
      sizes.pop_back();
      return;
    }
    for (int s = remaining - (left - 1); s >= 1; --s) {
      sizes.push_back(s);
      self(self, remaining - s, left - 1);
      sizes.pop_back();
    }
  };
  if (parts >= 1 && total >= parts) rec(rec, total, parts);
}

}  // namespace morphtok

#endif  // MORPHTOK_MERGE_LIST_H_
