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

#include <spdlog/spdlog.h>

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "morphtok/common.h"

namespace morphtok {

std::string_view MergeSourceName(MergeSource source) {
  switch (source) {
    case MergeSource::kCanonical:
      return "canonical";
    case MergeSource::kRetrieved:
      return "retrieved";
    case MergeSource::kAligned:
      return "aligned";
  }
  return "canonical";
}

namespace {

struct AlignCost {
  int edits = 0;
  int penalty = 0;

  AlignCost operator+(AlignCost o) const {
    return {edits + o.edits, penalty + o.penalty};
  }
  friend bool operator<(AlignCost a, AlignCost b) {
    return std::tie(a.edits, a.penalty) < std::tie(b.edits, b.penalty);
  }
  friend bool operator==(AlignCost a, AlignCost b) {
    return a.edits == b.edits && a.penalty == b.penalty;
  }
};

enum class Move : unsigned char { kNone, kDiag, kDelete, kInsert };

}  // namespace

std::vector<size_t> AlignMorphemes(std::string_view surface,
                                   const std::vector<std::string>& morphemes) {
  const std::vector<std::string> s = Utf8Chars(surface);
  std::vector<std::string> c;
  std::vector<int> owner;    // morpheme of each canonical char
  std::vector<int> offset;   // position inside that morpheme
  std::vector<int> mlen;
  std::vector<bool> boundary;  // boundary[i]: canonical position i is a junction
  const int k = static_cast<int>(morphemes.size());
  for (int m = 0; m < k; ++m) {
    auto chars = Utf8Chars(StripMarker(morphemes[m]));
    mlen.push_back(static_cast<int>(chars.size()));
    for (size_t o = 0; o < chars.size(); ++o) {
      c.push_back(chars[o]);
      owner.push_back(m);
      offset.push_back(static_cast<int>(o));
    }
  }
  const size_t L = c.size();
  const size_t S = s.size();
  boundary.assign(L + 1, false);
  for (size_t i = 1; i < L; ++i) boundary[i] = owner[i] != owner[i - 1];

  auto del_penalty = [&](size_t p) {
    if (offset[p] == 0 && owner[p] > 0) return 0;
    if (offset[p] == mlen[owner[p]] - 1) return 1;
    return 2;
  };
  auto ins_penalty = [&](size_t i, size_t j) {
    if (!boundary[i]) return 2;
    return (j > 0 && s[j] == s[j - 1]) ? 0 : 1;
  };

  const AlignCost kInf{std::numeric_limits<int>::max() / 4, 0};
  std::vector<std::vector<AlignCost>> dp(L + 1,
                                         std::vector<AlignCost>(S + 1, kInf));
  std::vector<std::vector<Move>> mv(L + 1, std::vector<Move>(S + 1, Move::kNone));
  dp[0][0] = {0, 0};
  for (size_t i = 0; i <= L; ++i) {
    for (size_t j = 0; j <= S; ++j) {
      if (i == 0 && j == 0) continue;
      AlignCost best = kInf;
      Move choice = Move::kNone;
      if (i > 0 && j > 0) {
        AlignCost cand = dp[i - 1][j - 1] + AlignCost{c[i - 1] == s[j - 1] ? 0 : 1, 0};
        best = cand;
        choice = Move::kDiag;
      }
      if (i > 0) {
        AlignCost cand = dp[i - 1][j] + AlignCost{1, del_penalty(i - 1)};
        if (cand < best) {
          best = cand;
          choice = Move::kDelete;
        }
      }
      if (j > 0) {
        AlignCost cand = dp[i][j - 1] + AlignCost{1, ins_penalty(i, j - 1)};
        if (cand < best) {
          best = cand;
          choice = Move::kInsert;
        }
      }
      dp[i][j] = best;
      mv[i][j] = choice;
    }
  }

  // Owner morpheme of every surface character.
  std::vector<int> surface_owner(S, 0);
  size_t i = L, j = S;
  while (i > 0 || j > 0) {
    switch (mv[i][j]) {
      case Move::kDiag:
        surface_owner[j - 1] = owner[i - 1];
        --i;
        --j;
        break;
      case Move::kDelete:
        --i;
        break;
      case Move::kInsert:
        surface_owner[j - 1] = i < L ? owner[i] : std::max(k - 1, 0);
        --j;
        break;
      case Move::kNone:
        throw InternalError("alignment traceback failed");
    }
  }

  std::vector<size_t> counts(static_cast<size_t>(std::max(k, 1)), 0);
  for (int o : surface_owner) ++counts[static_cast<size_t>(o)];
  std::vector<size_t> bounds(static_cast<size_t>(k) + 1, 0);
  for (int m = 0; m < k; ++m) bounds[m + 1] = bounds[m] + counts[m];
  return bounds;
}

// ---------------------------------------------------------------------------
// Composer

Composer::Composer(std::string word, std::vector<std::string> morphemes,
                   const RecordIndex* index)
    : word_(std::move(word)),
      morphemes_(std::move(morphemes)),
      index_(index),
      surface_chars_(Utf8Chars(word_)),
      boundaries_(AlignMorphemes(word_, morphemes_)) {}

std::optional<std::string> Composer::AlignedForm(int begin, int end) const {
  const size_t b = boundaries_[static_cast<size_t>(begin)];
  const size_t e = boundaries_[static_cast<size_t>(end)];
  if (e <= b) return std::nullopt;
  std::string out = begin == 0 ? std::string(kWordMarker) : std::string();
  for (size_t i = b; i < e; ++i) out += surface_chars_[i];
  return out;
}

std::vector<std::string> Composer::RetrievedForms(std::string_view left,
                                                  std::string_view right) const {
  std::vector<std::string> out;
  if (index_ == nullptr) return out;
  const bool marked = HasMarker(left);
  for (auto& w : index_->Retrieve(StripMarker(left), StripMarker(right)))
    out.push_back(marked ? AddMarker(w) : w);
  return out;
}

std::vector<std::pair<std::string, MergeSource>> Composer::MergeForms(
    const MergeUnit& left, const MergeUnit& right) const {
  std::vector<std::pair<std::string, MergeSource>> out;
  const auto retrieved = RetrievedForms(left.form, right.form);
  if (IsFullSpan(left.begin, right.end)) {
    const std::string full = MarkedWord();
    bool by_record =
        std::find(retrieved.begin(), retrieved.end(), full) != retrieved.end();
    out.emplace_back(full,
                     by_record ? MergeSource::kRetrieved : MergeSource::kAligned);
    return out;
  }
  for (const auto& f : retrieved) out.emplace_back(f, MergeSource::kRetrieved);
  if (auto aligned = AlignedForm(left.begin, right.end)) {
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const auto& p) { return p.first == *aligned; });
    if (!dup) out.emplace_back(*aligned, MergeSource::kAligned);
  }
  return out;
}

std::optional<std::string> Composer::ComposePair(const MergeUnit& left,
                                                 const MergeUnit& right) const {
  auto forms = MergeForms(left, right);
  if (forms.empty()) return std::nullopt;
  return forms.front().first;
}

std::optional<std::string> Composer::TruncatedForm(int morpheme) const {
  if (morpheme <= 0 || morpheme >= morpheme_count()) return std::nullopt;
  auto aligned = AlignedForm(morpheme, morpheme + 1);
  if (!aligned) return std::nullopt;
  const std::string& canonical = morphemes_[static_cast<size_t>(morpheme)];
  if (aligned->size() < canonical.size() &&
      canonical.compare(0, aligned->size(), *aligned) == 0)
    return aligned;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// MergeList

std::map<std::string, std::string> MergeList::MergeEntries() const {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : entries_)
    if (k.find(' ') != std::string::npos) out.emplace(k, v);
  return out;
}

std::vector<std::string> MergeList::FormsOf(int begin, int end) const {
  auto it = span_forms_.find({begin, end});
  if (it == span_forms_.end()) return {};
  return it->second;
}

std::optional<std::string> MergeList::PrimaryForm(int begin, int end) const {
  auto it = span_forms_.find({begin, end});
  if (it == span_forms_.end() || it->second.empty()) return std::nullopt;
  return it->second.front();
}

std::vector<std::string> MergeList::GroupForms(int begin, int end) const {
  if (end - begin == 1) {
    std::vector<std::string> out = {morphemes_[static_cast<size_t>(begin)]};
    auto it = truncated_.find(begin);
    if (it != truncated_.end()) out.push_back(it->second);
    return out;
  }
  return FormsOf(begin, end);
}

MergeList BuildMergeList(const std::string& word,
                         const MorphemeSegmentation& segmentation,
                         const RecordIndex& index,
                         const MergeBuildOptions& options) {
  MergeList list;
  list.word_ = word;
  list.morphemes_ = segmentation.morphemes;
  const int k = list.morpheme_count();
  if (k == 0) throw InputError("empty segmentation for '" + word + "'");
  Composer composer(word, segmentation.morphemes, &index);

  std::set<std::tuple<int, int, std::string>> seen;
  for (int m = 0; m < k; ++m) {
    MergeUnit u{segmentation.morphemes[m], m, m + 1, MergeSource::kCanonical};
    if (seen.emplace(u.begin, u.end, u.form).second) list.units_.push_back(u);
  }

  size_t guard = options.max_rounds;
  if (2 * k < 64) guard = std::min<size_t>(guard, size_t{1} << (2 * k));
  size_t rounds = 0;
  std::set<std::pair<int, int>> reported;
  bool changed = true;
  while (changed) {
    changed = false;
    if (++rounds > guard) {
      throw InternalError("merge list for '" + word + "' did not converge in " +
                          std::to_string(guard) + " rounds");
    }
    const size_t snapshot = list.units_.size();
    for (size_t a = 0; a < snapshot; ++a) {
      for (size_t b = 0; b < snapshot; ++b) {
        const MergeUnit left = list.units_[a];
        const MergeUnit right = list.units_[b];
        if (left.end != right.begin) continue;
        auto forms = composer.MergeForms(left, right);
        if (forms.empty()) {
          if (reported.emplace(left.begin, right.end).second) {
            list.diagnostics_.push_back("degenerate alignment for span [" +
                                        std::to_string(left.begin) + "," +
                                        std::to_string(right.end) + ") of '" +
                                        word + "'");
          }
          continue;
        }
        for (auto& [form, source] : forms) {
          if (seen.emplace(left.begin, right.end, form).second) {
            list.units_.push_back({form, left.begin, right.end, source});
            changed = true;
          }
        }
      }
    }
  }

  // Span forms: retrieved before aligned, each in discovery order.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& u : list.units_) {
      bool first_pass = u.source != MergeSource::kAligned;
      if ((pass == 0) != first_pass) continue;
      auto& forms = list.span_forms_[{u.begin, u.end}];
      if (std::find(forms.begin(), forms.end(), u.form) == forms.end())
        forms.push_back(u.form);
    }
  }
  for (int m = 1; m < k; ++m)
    if (auto t = composer.TruncatedForm(m)) list.truncated_[m] = *t;

  for (const auto& u : list.units_) list.entries_.emplace(u.form, u.form);

  // Every chain of >= 2 adjacent units becomes a key.
  std::vector<std::vector<size_t>> starting_at(static_cast<size_t>(k));
  for (size_t i = 0; i < list.units_.size(); ++i)
    starting_at[static_cast<size_t>(list.units_[i].begin)].push_back(i);
  std::vector<std::string> chain;
  auto extend = [&](auto& self, int begin, int end) -> void {
    if (chain.size() >= 2) {
      list.entries_.emplace(JoinStrings(chain, " "),
                            *list.PrimaryForm(begin, end));
    }
    if (end >= k) return;
    for (size_t i : starting_at[static_cast<size_t>(end)]) {
      chain.push_back(list.units_[i].form);
      self(self, begin, list.units_[i].end);
      chain.pop_back();
    }
  };
  for (size_t i = 0; i < list.units_.size(); ++i) {
    chain = {list.units_[i].form};
    extend(extend, list.units_[i].begin, list.units_[i].end);
  }

  for (const auto& d : list.diagnostics_) spdlog::debug("merge list: {}", d);
  return list;
}

std::vector<MergeList> BuildMergeLists(std::string_view word,
                                       const MorphLexicon& lexicon) {
  std::vector<MergeList> lists;
  auto key = lexicon.ResolveKey(word);
  if (!key) return lists;
  for (const auto& seg : *lexicon.Find(*key))
    lists.push_back(BuildMergeList(*key, seg, lexicon.index()));
  return lists;
}

std::vector<MergeCandidate> EnumerateMerges(const std::vector<MergeList>& lists,
                                            int n) {
  std::vector<MergeCandidate> out;
  if (n < 1) return out;
  std::set<std::vector<std::string>> seen;
  for (const auto& list : lists) {
    ForEachComposition(list.morpheme_count(), n, [&](const std::vector<int>& sizes) {
      std::vector<std::vector<std::string>> choices;
      int begin = 0;
      for (int s : sizes) {
        choices.push_back(list.GroupForms(begin, begin + s));
        begin += s;
      }
      if (std::any_of(choices.begin(), choices.end(),
                      [](const auto& c) { return c.empty(); }))
        return;
      std::vector<size_t> pick(choices.size(), 0);
      while (true) {
        MergeCandidate cand;
        cand.source = MergeSource::kRetrieved;
        for (size_t g = 0; g < choices.size(); ++g) {
          cand.units.push_back(choices[g][pick[g]]);
          if (pick[g] > 0) cand.source = MergeSource::kAligned;
        }
        if (seen.insert(cand.units).second) out.push_back(std::move(cand));
        size_t g = choices.size();
        while (g > 0) {
          --g;
          if (++pick[g] < choices[g].size()) break;
          pick[g] = 0;
          if (g == 0) return;
        }
        if (choices.empty()) return;
      }
    });
  }
  return out;
}

std::vector<MergeCandidate> EnumerateMerges(std::string_view word,
                                            const MorphLexicon& lexicon,
                                            int n) {
  return EnumerateMerges(BuildMergeLists(word, lexicon), n);
}

}  // namespace morphtok
