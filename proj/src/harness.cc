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

#include "morphtok/harness.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "morphtok/common.h"
#include "morphtok/rng.h"

namespace morphtok {

// ---------------------------------------------------------------------------
// Group assignment

std::vector<DatasetRow> ReadDataset(const std::string& path) {
  std::vector<DatasetRow> rows;
  std::set<std::string> ids;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty()) continue;
    DatasetRow row;
    try {
      const auto doc = nlohmann::json::parse(line);
      row.id = doc.at("id").is_string() ? doc["id"].get<std::string>()
                                        : doc["id"].dump();
      const auto& label = doc.at("label");
      row.gold = label.is_boolean() ? label.get<bool>() : label.get<int>() != 0;
      if (doc.contains("word_a") && doc.contains("word_b")) {
        row.words = {doc["word_a"].get<std::string>(), doc["word_b"].get<std::string>()};
      } else {
        row.words = {doc.at("word").get<std::string>()};
      }
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!ids.insert(row.id).second)
      throw InputError(path + ":" + std::to_string(line_no) + ": duplicate id " + row.id);
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<std::string>& GroupOrder() {
  static const std::vector<std::string> order = {
      "vocab",        "morph",       "alien",       "na",
      "vocab&vocab",  "morph&morph", "alien&alien", "morph&alien",
      "vocab&alien",  "vocab&morph", kNaInvolvedGroup, kExcludedGroup};
  return order;
}

std::string PairGroup(LabelValue a, LabelValue b) {
  if (a == LabelValue::kNa || b == LabelValue::kNa) return kNaInvolvedGroup;
  // LabelValue order is vocab < morph < alien.
  if (static_cast<int>(b) < static_cast<int>(a)) std::swap(a, b);
  return std::string(LabelName(a)) + "&" + std::string(LabelName(b));
}

nlohmann::json GroupAssignment::ToJson() const {
  nlohmann::json doc;
  doc["id"] = id;
  doc["group"] = group;
  auto& ls = doc["labels"] = nlohmann::json::array();
  for (auto l : labels) ls.push_back(LabelName(l));
  doc["reason"] = reason ? nlohmann::json(*reason) : nlohmann::json();
  return doc;
}

GroupAssignment GroupAssignment::FromJson(const nlohmann::json& row) {
  GroupAssignment g;
  g.id = row.at("id").get<std::string>();
  g.group = row.at("group").get<std::string>();
  for (const auto& l : row.at("labels")) g.labels.push_back(ParseLabel(l.get<std::string>()));
  if (row.contains("reason") && !row["reason"].is_null())
    g.reason = row["reason"].get<std::string>();
  return g;
}

std::vector<GroupAssignment> AssignGroups(
    const std::vector<DatasetRow>& dataset,
    const std::unordered_map<std::string, SubwordSequence>& tokenizations,
    const Labeller& labeller) {
  std::unordered_map<std::string, LabelValue> memo;
  std::vector<GroupAssignment> out;
  size_t excluded = 0;
  for (const auto& row : dataset) {
    GroupAssignment g;
    g.id = row.id;
    for (const auto& w : row.words) {
      auto cached = memo.find(w);
      if (cached != memo.end()) {
        g.labels.push_back(cached->second);
        continue;
      }
      auto tok = tokenizations.find(w);
      if (tok == tokenizations.end()) {
        g.reason = "missing tokenization for '" + w + "'";
        break;
      }
      const LabelValue label = labeller.LabelWord(w, tok->second).value;
      memo.emplace(w, label);
      g.labels.push_back(label);
    }
    if (g.excluded()) {
      g.group = kExcludedGroup;
      g.labels.clear();
      ++excluded;
    } else if (g.labels.size() == 1) {
      g.group = std::string(LabelName(g.labels[0]));
    } else {
      g.group = PairGroup(g.labels[0], g.labels[1]);
    }
    out.push_back(std::move(g));
  }
  if (excluded > 0)
    spdlog::warn("{} of {} instances excluded for missing tokenizations", excluded,
                 dataset.size());
  return out;
}

void WriteGroups(const std::string& path,
                 const std::vector<GroupAssignment>& groups) {
  std::string text;
  for (const auto& g : groups) text += g.ToJson().dump() + "\n";
  WriteFile(path, text);
}

std::vector<GroupAssignment> ReadGroups(const std::string& path) {
  std::vector<GroupAssignment> out;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty()) continue;
    try {
      out.push_back(GroupAssignment::FromJson(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scoring

PredictionFile ReadPredictions(const std::string& path) {
  PredictionFile file;
  file.name = path;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    const auto trimmed = TrimView(line);
    if (trimmed.empty()) continue;
    auto cols = SplitString(trimmed, ',');
    if (cols.size() < 2)
      throw InputError(path + ":" + std::to_string(line_no) + ": expected id,pred");
    const std::string id(TrimView(cols[0]));
    const std::string pred = ToLower(TrimView(cols[1]));
    if (line_no == 1 && id == "id") continue;
    bool value;
    if (pred == "1" || pred == "true" || pred == "yes") {
      value = true;
    } else if (pred == "0" || pred == "false" || pred == "no") {
      value = false;
    } else {
      throw InputError(path + ":" + std::to_string(line_no) + ": bad prediction '" +
                       pred + "'");
    }
    if (!file.by_id.emplace(id, value).second)
      throw InputError(path + ":" + std::to_string(line_no) + ": duplicate id " + id);
  }
  return file;
}

namespace {

std::string DiffSummary(const std::string& what, const std::set<std::string>& expected,
                        const std::set<std::string>& actual) {
  std::vector<std::string> missing, extra;
  std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                      std::back_inserter(missing));
  std::set_difference(actual.begin(), actual.end(), expected.begin(), expected.end(),
                      std::back_inserter(extra));
  if (missing.empty() && extra.empty()) return {};
  auto head = [](const std::vector<std::string>& v) {
    std::vector<std::string> h(v.begin(), v.begin() + std::min<std::ptrdiff_t>(3, v.size()));
    return JoinStrings(h, ", ");
  };
  std::string msg = what + ": id mismatch with dataset";
  if (!missing.empty())
    msg += "; " + std::to_string(missing.size()) + " missing (" + head(missing) + ")";
  if (!extra.empty())
    msg += "; " + std::to_string(extra.size()) + " unexpected (" + head(extra) + ")";
  return msg;
}

void Summarize(GroupStats* s) {
  const size_t k = s->per_seed.size();
  if (k == 0) return;
  if (std::all_of(s->per_seed.begin(), s->per_seed.end(),
                  [&](double v) { return v == s->per_seed[0]; })) {
    s->mean = s->per_seed[0];
    s->std = 0.0;
    return;
  }
  double sum = 0;
  for (double v : s->per_seed) sum += v;
  s->mean = sum / static_cast<double>(k);
  double sq = 0;
  for (double v : s->per_seed) sq += (v - s->mean) * (v - s->mean);
  s->std = std::sqrt(sq / static_cast<double>(k));
}

std::string Fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

const GroupStats* EvaluationReport::Find(std::string_view group) const {
  for (const auto& g : groups)
    if (g.group == group) return &g;
  return nullptr;
}

EvaluationReport Score(const std::vector<DatasetRow>& dataset,
                       const std::vector<GroupAssignment>& groups,
                       const std::vector<PredictionFile>& predictions,
                       nlohmann::json metadata) {
  if (predictions.empty()) throw InputError("at least one prediction file is required");
  std::set<std::string> ids;
  for (const auto& r : dataset) ids.insert(r.id);
  std::set<std::string> group_ids;
  std::unordered_map<std::string, const GroupAssignment*> group_of;
  for (const auto& g : groups) {
    group_ids.insert(g.id);
    group_of[g.id] = &g;
  }
  std::vector<std::string> problems;
  if (auto d = DiffSummary("groups", ids, group_ids); !d.empty()) problems.push_back(d);
  for (const auto& p : predictions) {
    std::set<std::string> pids;
    for (const auto& [id, v] : p.by_id) pids.insert(id);
    if (auto d = DiffSummary(p.name, ids, pids); !d.empty()) problems.push_back(d);
  }
  if (!problems.empty()) throw InputError(JoinStrings(problems, "\n"));

  EvaluationReport report;
  report.dataset_size = dataset.size();
  std::map<std::string, GroupStats> stats;
  GroupStats total;
  total.group = "total";
  total.count = dataset.size();
  std::map<std::string, std::vector<size_t>> correct;  // group -> per seed
  std::vector<size_t> total_correct(predictions.size(), 0);
  for (const auto& row : dataset) {
    const auto& g = *group_of.at(row.id);
    auto& s = stats[g.group];
    s.group = g.group;
    ++s.count;
    auto& c = correct[g.group];
    c.resize(predictions.size(), 0);
    for (size_t p = 0; p < predictions.size(); ++p) {
      const bool ok = predictions[p].by_id.at(row.id) == row.gold;
      c[p] += ok ? 1 : 0;
      total_correct[p] += ok ? 1 : 0;
    }
    if (g.excluded()) ++report.excluded;
  }
  const double n = static_cast<double>(std::max<size_t>(1, dataset.size()));
  for (const auto& name : GroupOrder()) {
    auto it = stats.find(name);
    if (it == stats.end()) continue;
    GroupStats s = it->second;
    s.coverage = 100.0 * static_cast<double>(s.count) / n;
    for (size_t c : correct[name])
      s.per_seed.push_back(100.0 * static_cast<double>(c) / static_cast<double>(s.count));
    Summarize(&s);
    report.groups.push_back(std::move(s));
  }
  total.coverage = dataset.empty() ? 0.0 : 100.0;
  for (size_t c : total_correct)
    total.per_seed.push_back(dataset.empty() ? 0.0 : 100.0 * static_cast<double>(c) / n);
  Summarize(&total);
  report.total = std::move(total);

  metadata["std"] = "population";
  metadata["seeds"] = predictions.size();
  auto& files = metadata["prediction_files"] = nlohmann::json::array();
  for (const auto& p : predictions) files.push_back(p.name);
  report.metadata = std::move(metadata);
  return report;
}

nlohmann::json EvaluationReport::ToJson() const {
  auto stats_json = [](const GroupStats& s) {
    return nlohmann::json{{"group", s.group},       {"count", s.count},
                          {"coverage", s.coverage}, {"accuracy_per_seed", s.per_seed},
                          {"accuracy_mean", s.mean}, {"accuracy_std", s.std}};
  };
  nlohmann::json doc;
  doc["format"] = "morphtok-report";
  doc["version"] = 1;
  doc["dataset_size"] = dataset_size;
  doc["excluded"] = excluded;
  auto& gs = doc["groups"] = nlohmann::json::array();
  for (const auto& g : groups) gs.push_back(stats_json(g));
  doc["total"] = stats_json(total);
  doc["metadata"] = metadata;
  return doc;
}

std::string EvaluationReport::ToMarkdown() const {
  std::string out;
  for (const auto& [k, v] : metadata.items())
    out += "- " + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  if (!metadata.empty()) out += "\n";
  out += "| Group | Count | Coverage (%) | Accuracy (mean ± std) |\n";
  out += "|---|---:|---:|---:|\n";
  auto row = [&](const GroupStats& s) {
    out += "| " + s.group + " | " + std::to_string(s.count) + " | " + Fixed(s.coverage) +
           " | " + Fixed(s.mean) + " ± " + Fixed(s.std) + " |\n";
  };
  for (const auto& g : groups) row(g);
  GroupStats t = total;
  t.group = "**Total**";
  row(t);
  return out;
}

// ---------------------------------------------------------------------------
// Adversarial substitution

std::vector<TextPair> ReadTextPairs(const std::string& path) {
  std::vector<TextPair> out;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty()) continue;
    try {
      const auto doc = nlohmann::json::parse(line);
      TextPair p;
      p.id = doc.contains("id") ? (doc["id"].is_string() ? doc["id"].get<std::string>()
                                                         : doc["id"].dump())
                                : std::to_string(out.size());
      for (const auto& [a, b] : {std::pair{"text_a", "text_b"},
                                 std::pair{"premise", "hypothesis"},
                                 std::pair{"sentence1", "sentence2"}}) {
        if (doc.contains(a)) {
          p.text_a = doc[a].get<std::string>();
          p.text_b = doc.value(b, std::string());
          break;
        }
      }
      if (p.text_a.empty() && p.text_b.empty())
        throw InputError("no text_a/text_b fields");
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

namespace {

bool IsLetter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

// Calls fn(begin, length) for each word of `text`.
template <typename Fn>
void ForEachWord(std::string_view text, Fn&& fn) {
  size_t i = 0;
  while (i < text.size()) {
    if (!IsLetter(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() &&
           (IsLetter(static_cast<unsigned char>(text[j])) ||
            (text[j] == '\'' && j + 1 < text.size() &&
             IsLetter(static_cast<unsigned char>(text[j + 1])))))
      ++j;
    fn(i, j - i);
    i = j;
  }
}

// Carries the capitalization pattern of `model` over to `word`.
std::string MatchCase(std::string_view model, std::string word) {
  bool all_upper = model.size() > 1;
  for (unsigned char c : model)
    if (c < 0x80 && !(c >= 'A' && c <= 'Z')) all_upper = false;
  if (all_upper) {
    for (auto& c : word)
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  } else if (!model.empty() && model[0] >= 'A' && model[0] <= 'Z' && !word.empty() &&
             word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

}  // namespace

std::vector<std::string> TextWords(std::string_view text) {
  std::vector<std::string> out;
  ForEachWord(text, [&](size_t b, size_t n) { out.emplace_back(text.substr(b, n)); });
  return out;
}

nlohmann::json AdversarialInstance::ToJson() const {
  nlohmann::json doc;
  doc["id"] = original.id;
  doc["original"] = {{"text_a", original.text_a}, {"text_b", original.text_b}};
  doc["adversarial"] = {{"text_a", adversarial.text_a}, {"text_b", adversarial.text_b}};
  doc["substitutions"] = substitutions;
  doc["unswapped"] = unswapped;
  return doc;
}

AdversarialResult AdversarialSwap(const std::vector<TextPair>& inputs,
                                  const WordTokenizer& tokenizer,
                                  const Labeller& labeller,
                                  const std::vector<std::string>& candidates,
                                  uint64_t seed) {
  // word (lowercase) -> (label, final subword); memoized.
  struct Info {
    bool alien = false;
    std::string final_subword;
  };
  std::unordered_map<std::string, Info> memo;
  auto info = [&](const std::string& word) -> const Info& {
    auto it = memo.find(word);
    if (it != memo.end()) return it->second;
    Info i;
    if (auto tok = tokenizer(word); tok && !tok->tokens.empty()) {
      i.alien = labeller.LabelWord(word, *tok).value == LabelValue::kAlien;
      i.final_subword = tok->tokens.back();
    }
    return memo.emplace(word, std::move(i)).first->second;
  };

  std::set<std::string> distinct;
  for (const auto& c : candidates) distinct.insert(ToLower(c));
  std::unordered_map<std::string, std::vector<std::string>> by_final;
  for (const auto& c : distinct) {
    const Info& i = info(c);
    if (i.alien) by_final[i.final_subword].push_back(c);  // sorted: set order
  }

  PortableRng rng(seed);
  AdversarialResult result;
  for (const auto& input : inputs) {
    AdversarialInstance inst;
    inst.original = input;
    inst.adversarial.id = input.id;
    std::map<std::string, std::string> chosen;  // lowercase original -> substitute
    std::set<std::string> unswapped;
    auto rewrite = [&](const std::string& text) {
      std::string out;
      size_t last = 0;
      ForEachWord(text, [&](size_t b, size_t n) {
        out.append(text, last, b - last);
        last = b + n;
        const std::string surface = text.substr(b, n);
        const std::string lower = ToLower(surface);
        auto done = chosen.find(lower);
        if (done == chosen.end() && !unswapped.count(lower)) {
          const Info& i = info(lower);
          if (i.alien) {
            std::vector<std::string> options;
            auto pool = by_final.find(i.final_subword);
            if (pool != by_final.end())
              for (const auto& c : pool->second)
                if (c != lower) options.push_back(c);
            if (options.empty()) {
              unswapped.insert(lower);
            } else {
              done = chosen.emplace(lower, options[rng.Below(options.size())]).first;
            }
          }
        }
        out += done != chosen.end() ? MatchCase(surface, done->second) : surface;
      });
      out.append(text, last, std::string::npos);
      return out;
    };
    inst.adversarial.text_a = rewrite(input.text_a);
    inst.adversarial.text_b = rewrite(input.text_b);
    result.unswapped_words += unswapped.size();
    if (chosen.empty()) {
      ++result.dropped;
      continue;
    }
    inst.substitutions = std::move(chosen);
    inst.unswapped.assign(unswapped.begin(), unswapped.end());
    result.instances.push_back(std::move(inst));
  }
  if (result.dropped > 0)
    spdlog::info("{} of {} instances had no alien word to swap and were dropped",
                 result.dropped, inputs.size());
  return result;
}

// ---------------------------------------------------------------------------
// Audit sample

std::vector<LabelledWord> AuditSample(const std::vector<LabelledWord>& corpus,
                                      const AuditOptions& options) {
  std::set<std::string> seen;
  std::map<LabelValue, std::vector<const LabelledWord*>> by_class;
  for (const auto& row : corpus)
    if (seen.insert(row.word).second) by_class[row.label.value].push_back(&row);

  PortableRng rng(options.seed);
  std::vector<LabelledWord> out;
  for (LabelValue cls : options.classes) {
    const auto& pool = by_class[cls];
    if (pool.size() < options.per_class)
      spdlog::warn("audit class {} has {} distinct words, fewer than {}; taking all",
                   LabelName(cls), pool.size(), options.per_class);
    auto picks = rng.Sample(pool.size(), options.per_class);
    std::sort(picks.begin(), picks.end());
    for (size_t p : picks) out.push_back(*pool[p]);
  }
  return out;
}

std::string AuditTsv(const std::vector<LabelledWord>& rows) {
  if (rows.empty()) return {};
  std::string out = "word\tsubwords\tlabel\tmu\tannotator_label\tannotator_notes\n";
  for (const auto& r : rows) out += TsvLine(r) + "\t\t\n";
  return out;
}

}  // namespace morphtok
