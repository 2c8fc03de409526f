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

#include "morphtok/lexicon.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <utility>

#include "morphtok/common.h"

namespace morphtok {

using nlohmann::json;

std::string_view RecordKindName(RecordKind kind) {
  switch (kind) {
    case RecordKind::kInflection:
      return "inflection";
    case RecordKind::kDerivation:
      return "derivation";
    case RecordKind::kCompound:
      return "compound";
  }
  return "inflection";
}

RecordKind ParseRecordKind(std::string_view name) {
  if (name == "inflection" || name == "infl") return RecordKind::kInflection;
  if (name == "derivation" || name == "deri") return RecordKind::kDerivation;
  if (name == "compound" || name == "comp") return RecordKind::kCompound;
  throw InputError("unknown record kind: " + std::string(name));
}

namespace {

bool ValidUnit(std::string_view s) {
  return !s.empty() && s.find_first_of(" \t") == std::string_view::npos;
}

}  // namespace

std::optional<SegmentationRecord> ParseRecordLine(std::string_view line,
                                                  RecordFormat format,
                                                  RecordKind unimorph_kind) {
  if (TrimView(line).empty()) return std::nullopt;
  std::vector<std::string> cols = SplitString(line, '\t');
  for (auto& c : cols) c = std::string(TrimView(c));
  SegmentationRecord rec;
  rec.word = StripMarker(cols[0]);
  if (rec.word.empty()) throw InputError("empty surface word");
  if (!ValidUnit(rec.word)) throw InputError("surface word contains spaces");

  if (format == RecordFormat::kCompoundTsv) {
    if (cols.size() != 2) throw InputError("expected 2 tab-separated columns");
    rec.kind = RecordKind::kCompound;
    for (auto& p : SplitWhitespace(cols[1])) {
      std::string part = StripMarker(p);
      if (part.empty()) throw InputError("empty compound part");
      rec.parts.push_back(std::move(part));
    }
    if (rec.parts.size() < 2)
      throw InputError("compound segmentation needs at least 2 parts");
    return rec;
  }

  if (cols.size() < 3 || cols.size() > 4)
    throw InputError("expected 3 or 4 tab-separated columns");
  if (unimorph_kind == RecordKind::kCompound)
    throw InputError("compound records use the compound format");
  rec.kind = unimorph_kind;
  rec.base = cols[1];
  std::string affix = cols[2];
  if (!ValidUnit(rec.base)) throw InputError("missing or invalid base");
  if (affix.size() > 1 && affix.front() == '-') {
    affix.erase(0, 1);
    rec.position = AffixPosition::kSuffix;
  } else if (affix.size() > 1 && affix.back() == '-') {
    affix.pop_back();
    rec.position = AffixPosition::kPrefix;
  } else {
    rec.position = AffixPosition::kSuffix;
  }
  if (!ValidUnit(affix) || affix == "-") throw InputError("missing or invalid affix");
  rec.parts.push_back(std::move(affix));
  if (cols.size() == 4) rec.features = cols[3];
  return rec;
}

ParseResult ParseRecords(const std::vector<std::string>& paths,
                         RecordFormat format, RecordKind unimorph_kind) {
  ParseResult result;
  for (const auto& path : paths) {
    const std::vector<std::string> lines = ReadLines(path);
    for (size_t i = 0; i < lines.size(); ++i) {
      try {
        auto rec = ParseRecordLine(lines[i], format, unimorph_kind);
        if (rec) result.records.push_back(std::move(*rec));
      } catch (const InputError& e) {
        spdlog::warn("{}:{}: rejected line: {}", path, i + 1, e.what());
        result.rejects.push_back({path, i + 1, lines[i], e.what()});
      }
    }
  }
  return result;
}

namespace {

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n\t") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void WriteRejectReport(const std::string& path,
                       const std::vector<RejectedLine>& rejects) {
  std::string out = "path,line,reason,text\n";
  for (const auto& r : rejects) {
    out += CsvField(r.path) + "," + std::to_string(r.line_number) + "," +
           CsvField(r.reason) + "," + CsvField(r.text) + "\n";
  }
  WriteFile(path, out);
}

// ---------------------------------------------------------------------------
// RecordIndex

namespace {

std::string PairKey(std::string_view left, std::string_view right) {
  std::string key(left);
  key.push_back('\t');
  key.append(right);
  return key;
}

}  // namespace

RecordIndex::RecordIndex(std::vector<SegmentationRecord> records)
    : records_(std::move(records)) {
  for (size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    by_word_[r.word].push_back(i);
    if (r.kind == RecordKind::kCompound) continue;
    if (r.position == AffixPosition::kSuffix) {
      by_pair_[PairKey(r.base, r.affix())].push_back(i);
    } else {
      by_pair_[PairKey(r.affix(), r.base)].push_back(i);
    }
  }
}

std::vector<const SegmentationRecord*> RecordIndex::RecordsFor(
    std::string_view word) const {
  std::vector<const SegmentationRecord*> out;
  auto it = by_word_.find(std::string(word));
  if (it == by_word_.end()) return out;
  for (size_t i : it->second) out.push_back(&records_[i]);
  return out;
}

bool RecordIndex::HasRecords(std::string_view word) const {
  return by_word_.count(std::string(word)) > 0;
}

bool RecordIndex::HasRecordsOfKind(std::string_view word,
                                   RecordKind kind) const {
  for (const auto* r : RecordsFor(word))
    if (r->kind == kind) return true;
  return false;
}

std::vector<std::string> RecordIndex::Retrieve(std::string_view left,
                                               std::string_view right) const {
  std::vector<std::string> out;
  auto it = by_pair_.find(PairKey(left, right));
  if (it == by_pair_.end()) return out;
  for (size_t i : it->second) {
    const std::string& w = records_[i].word;
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  }
  return out;
}

std::vector<std::string> RecordIndex::Words() const {
  std::vector<std::string> words;
  words.reserve(by_word_.size());
  for (const auto& [w, _] : by_word_) words.push_back(w);
  std::sort(words.begin(), words.end());
  return words;
}

// ---------------------------------------------------------------------------
// Segmentation resolution

namespace {

struct Analysis {
  std::vector<std::string> morphemes;
  std::vector<RecordKind> provenance;
};

class Resolver {
 public:
  Resolver(const RecordIndex& index, const ResolveOptions& options,
           std::vector<std::string>* diagnostics)
      : index_(index), options_(options), diagnostics_(diagnostics) {}

  // All analyses of a word that has records. Empty when every path aborted.
  std::vector<Analysis> Expand(const std::string& word, int depth) {
    if (depth > options_.max_depth) {
      Diagnose("depth cap " + std::to_string(options_.max_depth) +
               " reached while expanding '" + word + "'");
      return {};
    }
    if (std::find(stack_.begin(), stack_.end(), word) != stack_.end()) {
      Diagnose("cycle through '" + word + "' (" + JoinStrings(stack_, " <- ") +
               ")");
      return {};
    }
    stack_.push_back(word);
    std::vector<Analysis> out;
    for (const SegmentationRecord* rec : index_.RecordsFor(word)) {
      std::vector<Analysis> found = rec->kind == RecordKind::kCompound
                                        ? ExpandCompound(*rec, depth)
                                        : ExpandAffixed(*rec, depth);
      for (auto& a : found) AddUnique(out, std::move(a));
    }
    stack_.pop_back();
    return out;
  }

 private:
  // A base with records is expanded; otherwise it is a root.
  std::vector<Analysis> ExpandOrRoot(const std::string& unit, int depth,
                                     bool derivation_only) {
    bool expandable = derivation_only
                          ? index_.HasRecordsOfKind(unit, RecordKind::kDerivation)
                          : index_.HasRecords(unit);
    if (!expandable) return {Analysis{{unit}, {}}};
    return Expand(unit, depth + 1);
  }

  std::vector<Analysis> ExpandAffixed(const SegmentationRecord& rec,
                                      int depth) {
    std::vector<Analysis> out;
    for (auto& sub : ExpandOrRoot(rec.base, depth, false)) {
      Analysis a;
      a.provenance.push_back(rec.kind);
      a.provenance.insert(a.provenance.end(), sub.provenance.begin(),
                          sub.provenance.end());
      if (rec.position == AffixPosition::kPrefix) {
        a.morphemes.push_back(rec.affix());
        a.morphemes.insert(a.morphemes.end(), sub.morphemes.begin(),
                           sub.morphemes.end());
      } else {
        a.morphemes = std::move(sub.morphemes);
        a.morphemes.push_back(rec.affix());
      }
      out.push_back(std::move(a));
    }
    return out;
  }

  std::vector<Analysis> ExpandCompound(const SegmentationRecord& rec,
                                       int depth) {
    std::vector<Analysis> acc = {Analysis{{}, {RecordKind::kCompound}}};
    for (const auto& part : rec.parts) {
      if (part == rec.word) {
        Diagnose("compound '" + rec.word + "' lists itself as a part");
        return {};
      }
      std::vector<Analysis> options = ExpandOrRoot(part, depth, true);
      if (options.empty()) return {};
      std::vector<Analysis> next;
      for (const auto& prefix : acc) {
        for (const auto& opt : options) {
          Analysis a = prefix;
          a.morphemes.insert(a.morphemes.end(), opt.morphemes.begin(),
                             opt.morphemes.end());
          a.provenance.insert(a.provenance.end(), opt.provenance.begin(),
                              opt.provenance.end());
          next.push_back(std::move(a));
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

  static void AddUnique(std::vector<Analysis>& out, Analysis a) {
    for (const auto& existing : out)
      if (existing.morphemes == a.morphemes) return;
    out.push_back(std::move(a));
  }

  void Diagnose(std::string msg) {
    spdlog::debug("segmentation: {}", msg);
    if (diagnostics_) diagnostics_->push_back(std::move(msg));
  }

  const RecordIndex& index_;
  const ResolveOptions& options_;
  std::vector<std::string>* diagnostics_;
  std::vector<std::string> stack_;
};

}  // namespace

std::vector<MorphemeSegmentation> ResolveSegmentation(
    std::string_view word, const RecordIndex& index,
    const ResolveOptions& options, std::vector<std::string>* diagnostics) {
  std::vector<MorphemeSegmentation> out;
  const std::string key(word);
  if (!index.HasRecords(key)) return out;
  Resolver resolver(index, options, diagnostics);
  for (auto& a : resolver.Expand(key, 0)) {
    if (a.morphemes.empty()) continue;
    bool has_empty = std::any_of(a.morphemes.begin(), a.morphemes.end(),
                                 [](const std::string& m) { return m.empty(); });
    if (has_empty) continue;
    a.morphemes.front() = AddMarker(a.morphemes.front());
    out.push_back({key, std::move(a.morphemes), std::move(a.provenance)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// MorphLexicon

std::string_view CasePolicyName(CasePolicy policy) {
  switch (policy) {
    case CasePolicy::kExact:
      return "exact";
    case CasePolicy::kExactThenLower:
      return "exact-then-lower";
    case CasePolicy::kLower:
      return "lower";
  }
  return "exact-then-lower";
}

CasePolicy ParseCasePolicy(std::string_view name) {
  if (name == "exact") return CasePolicy::kExact;
  if (name == "exact-then-lower") return CasePolicy::kExactThenLower;
  if (name == "lower") return CasePolicy::kLower;
  throw InputError("unknown case policy: " + std::string(name));
}

MorphLexicon MorphLexicon::Build(std::vector<SegmentationRecord> records,
                                 CasePolicy policy,
                                 const ResolveOptions& options,
                                 std::vector<std::string>* diagnostics) {
  if (policy == CasePolicy::kLower) {
    for (auto& r : records) {
      r.word = ToLower(r.word);
      r.base = ToLower(r.base);
      for (auto& p : r.parts) p = ToLower(p);
    }
  }
  MorphLexicon lex;
  lex.policy_ = policy;
  lex.index_ = RecordIndex(std::move(records));
  for (const auto& word : lex.index_.Words()) {
    auto segs = ResolveSegmentation(word, lex.index_, options, diagnostics);
    if (!segs.empty()) lex.entries_.emplace(word, std::move(segs));
  }
  return lex;
}

std::optional<std::string> MorphLexicon::ResolveKey(
    std::string_view word) const {
  if (policy_ == CasePolicy::kLower) {
    std::string lower = ToLower(word);
    if (entries_.count(lower)) return lower;
    return std::nullopt;
  }
  std::string exact(word);
  if (entries_.count(exact)) return exact;
  if (policy_ == CasePolicy::kExactThenLower) {
    std::string lower = ToLower(word);
    if (entries_.count(lower)) return lower;
  }
  return std::nullopt;
}

const std::vector<MorphemeSegmentation>* MorphLexicon::Find(
    std::string_view word) const {
  auto key = ResolveKey(word);
  if (!key) return nullptr;
  return &entries_.at(*key);
}

namespace {

json RecordToJson(const SegmentationRecord& r) {
  json j = {{"word", r.word},
            {"kind", RecordKindName(r.kind)},
            {"parts", r.parts}};
  if (r.kind != RecordKind::kCompound) {
    j["base"] = r.base;
    j["position"] = r.position == AffixPosition::kPrefix ? "prefix" : "suffix";
    j["features"] = r.features;
  }
  return j;
}

SegmentationRecord RecordFromJson(const json& j) {
  SegmentationRecord r;
  r.word = j.at("word").get<std::string>();
  r.kind = ParseRecordKind(j.at("kind").get<std::string>());
  r.parts = j.at("parts").get<std::vector<std::string>>();
  if (r.kind != RecordKind::kCompound) {
    r.base = j.at("base").get<std::string>();
    r.position = j.at("position").get<std::string>() == "prefix"
                     ? AffixPosition::kPrefix
                     : AffixPosition::kSuffix;
    r.features = j.value("features", "");
  }
  return r;
}

}  // namespace

json MorphLexicon::ToJson() const {
  json records = json::array();
  for (const auto& r : index_.records()) records.push_back(RecordToJson(r));
  json entries = json::object();
  for (const auto& [word, segs] : entries_) {
    json list = json::array();
    for (const auto& s : segs) {
      std::vector<std::string> prov;
      for (auto k : s.provenance) prov.emplace_back(RecordKindName(k));
      list.push_back({{"morphemes", s.morphemes}, {"provenance", prov}});
    }
    entries[word] = std::move(list);
  }
  return {{"format", "morphtok-lexicon"},
          {"version", kFormatVersion},
          {"case_policy", CasePolicyName(policy_)},
          {"records", std::move(records)},
          {"entries", std::move(entries)}};
}

MorphLexicon MorphLexicon::FromJson(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "morphtok-lexicon")
    throw InputError("not a lexicon snapshot");
  if (doc.value("version", 0) != kFormatVersion)
    throw InputError("unsupported lexicon snapshot version " +
                     std::to_string(doc.value("version", 0)));
  MorphLexicon lex;
  lex.policy_ = ParseCasePolicy(doc.at("case_policy").get<std::string>());
  std::vector<SegmentationRecord> records;
  for (const auto& j : doc.at("records")) records.push_back(RecordFromJson(j));
  lex.index_ = RecordIndex(std::move(records));
  for (const auto& [word, list] : doc.at("entries").items()) {
    std::vector<MorphemeSegmentation> segs;
    for (const auto& s : list) {
      MorphemeSegmentation seg;
      seg.word = word;
      seg.morphemes = s.at("morphemes").get<std::vector<std::string>>();
      for (const auto& k : s.at("provenance"))
        seg.provenance.push_back(ParseRecordKind(k.get<std::string>()));
      if (seg.morphemes.empty())
        throw InputError("snapshot entry '" + word + "' has no morphemes");
      segs.push_back(std::move(seg));
    }
    lex.entries_.emplace(word, std::move(segs));
  }
  return lex;
}

void MorphLexicon::Save(const std::string& path) const {
  WriteFile(path, ToJson().dump() + "\n");
}

MorphLexicon MorphLexicon::Load(const std::string& path) {
  json doc;
  try {
    doc = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw InputError("cannot parse lexicon snapshot " + path + ": " + e.what());
  }
  return FromJson(doc);
}

}  // namespace morphtok
