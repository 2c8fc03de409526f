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

#include "morphtok/challenge.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "morphtok/checksum.h"
#include "morphtok/common.h"
#include "morphtok/rng.h"
#include "morphtok/vocabulary.h"

namespace morphtok {

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kWaD:
      return "wad";
    case Task::kWaM:
      return "wam";
    case Task::kWaW:
      return "waw";
  }
  return "wad";
}

Task ParseTask(std::string_view name) {
  const std::string lower = ToLower(name);
  if (lower == "wad") return Task::kWaD;
  if (lower == "wam") return Task::kWaM;
  if (lower == "waw") return Task::kWaW;
  throw InputError("unknown task: " + std::string(name));
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "train";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw InputError("unknown split: " + std::string(name));
}

namespace {

std::pair<const char*, const char*> FieldNames(Task task) {
  switch (task) {
    case Task::kWaD:
      return {"word", "definition"};
    case Task::kWaM:
      return {"word", "category"};
    case Task::kWaW:
      return {"word_a", "word_b"};
  }
  return {"word", "definition"};
}

}  // namespace

nlohmann::json ChallengeInstance::ToJson() const {
  const auto [a, b] = FieldNames(task);
  nlohmann::json row;
  row["id"] = id;
  row["task"] = TaskName(task);
  row["split"] = SplitName(split);
  row[a] = first;
  row[b] = second;
  row["label"] = label;
  row["provenance"] = provenance ? nlohmann::json(*provenance) : nlohmann::json();
  return row;
}

ChallengeInstance ChallengeInstance::FromJson(const nlohmann::json& row) {
  try {
    ChallengeInstance inst;
    inst.id = row.at("id").get<std::string>();
    inst.task = ParseTask(row.at("task").get<std::string>());
    inst.split = ParseSplit(row.at("split").get<std::string>());
    const auto [a, b] = FieldNames(inst.task);
    inst.first = row.at(a).get<std::string>();
    inst.second = row.at(b).get<std::string>();
    inst.label = row.at("label").get<bool>();
    if (row.contains("provenance") && !row["provenance"].is_null())
      inst.provenance = row["provenance"].get<std::string>();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed challenge row: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Inputs

std::vector<SenseEntry> ReadSenseDump(const std::string& path) {
  std::vector<SenseEntry> out;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty() || line[0] == '#') continue;
    auto cols = SplitString(line, '\t');
    if (cols.size() < 2 || TrimView(cols[0]).empty() || TrimView(cols[1]).empty()) {
      spdlog::warn("{}:{}: skipping malformed sense line", path, line_no);
      continue;
    }
    out.push_back({std::string(TrimView(cols[0])), std::string(TrimView(cols[1]))});
  }
  if (out.empty()) throw InputError("sense dump is empty: " + path);
  return out;
}

std::string RelationPool::Key(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  std::string key(a);
  key.push_back('\t');
  key.append(b);
  return key;
}

bool RelationPool::Add(std::string a, std::string b, std::string relation) {
  if (a == b) return false;
  if (!keys_.insert(Key(a, b)).second) return true;
  if (b < a) std::swap(a, b);
  pairs_.push_back({std::move(a), std::move(b), std::move(relation)});
  return true;
}

bool RelationPool::Contains(std::string_view a, std::string_view b) const {
  return keys_.count(Key(a, b)) > 0;
}

std::vector<std::string> RelationPool::Words() const {
  std::set<std::string> words;
  for (const auto& p : pairs_) {
    words.insert(p[0]);
    words.insert(p[1]);
  }
  return {words.begin(), words.end()};
}

RelationPool ReadRelationPool(const std::string& path) {
  RelationPool pool;
  size_t line_no = 0;
  size_t self_pairs = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty() || line[0] == '#') continue;
    auto cols = SplitString(line, '\t');
    if (cols.size() < 3)
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected word_a, word_b, relation");
    const std::string relation = ToLower(TrimView(cols[2]));
    if (std::find(kRelations.begin(), kRelations.end(), relation) == kRelations.end())
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": unknown relation '" + relation + "'");
    if (!pool.Add(std::string(TrimView(cols[0])), std::string(TrimView(cols[1])),
                  relation))
      ++self_pairs;
  }
  if (self_pairs > 0) spdlog::warn("{}: ignored {} self-pairs", path, self_pairs);
  if (pool.size() == 0) throw InputError("relation pool is empty: " + path);
  return pool;
}

CategoryMap ReadCategories(const std::string& path) {
  CategoryMap out;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty() || line[0] == '#') continue;
    auto cols = SplitString(line, '\t');
    if (cols.size() < 2)
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected word and category");
    const std::string cat = ToLower(TrimView(cols[1]));
    if (std::find(kCategories.begin(), kCategories.end(), cat) == kCategories.end())
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": unknown category '" + cat + "'");
    out[std::string(TrimView(cols[0]))].insert(cat);
  }
  return out;
}

CategoryMap CategoriesFromRecords(const std::vector<SegmentationRecord>& records) {
  CategoryMap out;
  for (const auto& r : records)
    out[r.word].insert(std::string(RecordKindName(r.kind)));
  return out;
}

ReferenceTokenization ReadReferenceTokenization(const std::string& tokens_path,
                                                const std::string& ranked_path) {
  ReferenceTokenization ref;
  size_t line_no = 0;
  for (const auto& line : ReadLines(tokens_path)) {
    ++line_no;
    const auto trimmed = TrimView(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::string word;
    std::vector<std::string> raw;
    if (trimmed[0] == '{') {
      try {
        const auto row = nlohmann::json::parse(trimmed);
        word = row.at("word").get<std::string>();
        raw = row.at("subwords").get<std::vector<std::string>>();
      } catch (const nlohmann::json::exception& e) {
        throw InputError(tokens_path + ":" + std::to_string(line_no) + ": " + e.what());
      }
    } else {
      auto cols = SplitString(trimmed, '\t');
      if (cols.size() < 2)
        throw InputError(tokens_path + ":" + std::to_string(line_no) +
                         ": expected word and subwords");
      word = cols[0];
      raw = SplitWhitespace(cols[1]);
    }
    ref.words[word] = NormalizeSubwords(raw, MarkerScheme::kPlain).tokens;
  }
  for (const auto& line : ReadLines(ranked_path)) {
    const auto trimmed = TrimView(line);
    if (trimmed.empty()) continue;
    ref.ranked_subwords.push_back(
        NormalizeVocabToken(SplitString(trimmed, '\t')[0], MarkerScheme::kPlain));
  }
  return ref;
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

// Splits `items` (already shuffled) into three consecutive pools with the
// given weights.
template <typename T>
std::array<std::vector<T>, 3> Partition(const std::vector<T>& items,
                                        const std::array<double, 3>& weights) {
  const double total = weights[0] + weights[1] + weights[2];
  std::array<std::vector<T>, 3> pools;
  size_t begin = 0;
  double cumulative = 0;
  for (size_t s = 0; s < 3; ++s) {
    cumulative += weights[s];
    const size_t end =
        s == 2 ? items.size()
               : static_cast<size_t>(std::llround(items.size() * (cumulative / total)));
    pools[s].assign(items.begin() + static_cast<std::ptrdiff_t>(begin),
                    items.begin() + static_cast<std::ptrdiff_t>(std::max(begin, end)));
    begin = std::max(begin, end);
  }
  return pools;
}

// Shuffles each split's rows and assigns ids "<task>-<split>-<index>".
void Finalize(Task task, Split split, std::vector<ChallengeInstance>& rows,
              PortableRng& rng, std::vector<ChallengeInstance>* out) {
  rng.Shuffle(rows);
  char buf[32];
  for (size_t i = 0; i < rows.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%05zu", i);
    rows[i].task = task;
    rows[i].split = split;
    rows[i].id = std::string(TaskName(task)) + "-" + std::string(SplitName(split)) +
                 "-" + buf;
    out->push_back(std::move(rows[i]));
  }
}

std::vector<std::string> SortedKeys(const auto& map) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : map) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

// ---------------------------------------------------------------------------
// WaD

bool DefaultSenseFilter(const SenseEntry& entry) {
  if (entry.word.empty() || TrimView(entry.definition).empty()) return false;
  for (unsigned char c : entry.word)
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80 || c == '-' ||
          c == '\''))
      return false;
  return true;
}

std::vector<ChallengeInstance> GenerateWaD(const std::vector<SenseEntry>& dump,
                                           const WadOptions& options) {
  const auto& filter = options.prefilter ? options.prefilter : DefaultSenseFilter;
  std::map<std::string, std::vector<std::string>> defs;
  std::set<std::pair<std::string, std::string>> seen;
  size_t dropped = 0;
  for (const auto& e : dump) {
    if (!filter(e)) {
      ++dropped;
      continue;
    }
    if (seen.insert({e.word, e.definition}).second)
      defs[e.word].push_back(e.definition);
  }
  if (dropped > 0) spdlog::info("WaD pre-filter dropped {} sense entries", dropped);
  if (defs.size() < 6) throw InputError("WaD needs more distinct words in the sense dump");

  PortableRng rng(options.seed);
  std::vector<std::string> words = SortedKeys(defs);
  rng.Shuffle(words);
  const auto& sz = options.sizes;
  const auto pools = Partition(words, {static_cast<double>(sz.train),
                                       static_cast<double>(sz.dev),
                                       static_cast<double>(sz.test)});
  auto frequency = [&](const std::string& w) -> uint64_t {
    auto it = options.frequencies.find(w);
    return it != options.frequencies.end() ? it->second : defs.at(w).size();
  };
  auto has_def = [&](const std::string& w, const std::string& d) {
    const auto& v = defs.at(w);
    return std::find(v.begin(), v.end(), d) != v.end();
  };

  std::vector<ChallengeInstance> out;
  for (Split split : kSplits) {
    const auto& pool = pools[static_cast<size_t>(split)];
    const size_t requested = sz[split];
    std::vector<std::pair<std::string, std::string>> senses;
    for (const auto& w : pool)
      for (const auto& d : defs.at(w)) senses.push_back({w, d});
    rng.Shuffle(senses);

    size_t npos = (requested + 1) / 2;
    size_t nneg = requested / 2;
    if (senses.size() < npos || pool.size() < 2) {
      spdlog::warn("WaD {}: only {} senses available for {} positives; shrinking",
                   SplitName(split), senses.size(), npos);
      npos = pool.size() < 2 ? 0 : senses.size();
      nneg = std::min(nneg, npos);
    }
    std::vector<ChallengeInstance> rows;
    std::set<std::pair<std::string, std::string>> used;
    for (size_t i = 0; i < npos; ++i) {
      ChallengeInstance inst;
      inst.first = senses[i].first;
      inst.second = senses[i].second;
      inst.label = true;
      used.insert(senses[i]);
      rows.push_back(std::move(inst));
    }

    // Length buckets for the similarity search.
    std::map<size_t, std::vector<std::string>> by_length;
    for (const auto& w : pool) by_length[Utf8Length(w)].push_back(w);

    size_t made = 0;
    size_t fallbacks = 0;
    size_t cursor = 0;
    const size_t max_attempts = nneg * 20 + 100;
    for (size_t attempt = 0; made < nneg && attempt < max_attempts; ++attempt) {
      if (split == Split::kTrain) {
        // Random shuffle pairing: a word with another word's definition.
        const auto& w = pool[rng.Below(pool.size())];
        const auto& donor = senses[rng.Below(senses.size())];
        if (donor.first == w || has_def(w, donor.second)) continue;
        if (!used.insert({w, donor.second}).second) continue;
        ChallengeInstance inst;
        inst.first = w;
        inst.second = donor.second;
        inst.label = false;
        rows.push_back(std::move(inst));
        ++made;
        continue;
      }
      // Dev/test: keep the definition, swap its word for the most similar
      // unseen word of this split.
      const auto& [original, definition] = senses[cursor++ % senses.size()];
      const size_t olen = Utf8Length(original);
      struct Best {
        double dist = 2.0;
        uint64_t freq = 0;
        std::string word;
      };
      std::vector<Best> ranked;  // nearest first, short list
      for (const auto& [len, bucket] : by_length) {
        const double bound =
            static_cast<double>(len > olen ? len - olen : olen - len) /
            static_cast<double>(std::max(len, olen));
        if (ranked.size() >= 4 && bound > ranked.back().dist) continue;
        for (const auto& cand : bucket) {
          if (cand == original || has_def(cand, definition)) continue;
          const double d = static_cast<double>(EditDistance(cand, original)) /
                           static_cast<double>(std::max(len, olen));
          Best b{d, frequency(cand), cand};
          auto better = [](const Best& x, const Best& y) {
            if (x.dist != y.dist) return x.dist < y.dist;
            if (x.freq != y.freq) return x.freq > y.freq;
            return x.word < y.word;
          };
          auto pos = std::lower_bound(ranked.begin(), ranked.end(), b, better);
          ranked.insert(pos, b);
          if (ranked.size() > 4) ranked.pop_back();
        }
      }
      bool placed = false;
      for (size_t r = 0; r < ranked.size() && !placed; ++r) {
        if (!used.insert({ranked[r].word, definition}).second) continue;
        if (r > 0) ++fallbacks;
        ChallengeInstance inst;
        inst.first = ranked[r].word;
        inst.second = definition;
        inst.label = false;
        inst.provenance = original;
        rows.push_back(std::move(inst));
        placed = true;
      }
      if (placed) ++made;
    }
    if (fallbacks > 0)
      spdlog::info("WaD {}: {} negatives used a next-nearest substitute",
                   SplitName(split), fallbacks);
    if (made < nneg) {
      spdlog::warn("WaD {}: produced {} of {} negatives; trimming positives",
                   SplitName(split), made, nneg);
      // Drop positives from the end to keep labels balanced within one.
      std::vector<ChallengeInstance> kept;
      size_t keep_pos = std::min(npos, made + 1);
      size_t pos_seen = 0;
      for (auto& r : rows)
        if (!r.label || pos_seen++ < keep_pos) kept.push_back(std::move(r));
      rows = std::move(kept);
    }
    Finalize(Task::kWaD, split, rows, rng, &out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// WaM

std::vector<ChallengeInstance> GenerateWaM(const CategoryMap& categories,
                                           const ReferenceTokenization& reference,
                                           const WamOptions& options) {
  std::unordered_set<std::string> shared;
  for (size_t i = 0; i < reference.ranked_subwords.size() && i < options.shared_subwords;
       ++i)
    shared.insert(reference.ranked_subwords[i]);

  // Eligible words: a known category and a reference tokenization.
  std::vector<std::string> words;
  for (const auto& [w, cats] : categories) {
    if (cats.empty() || !reference.words.count(w)) continue;
    words.push_back(w);
  }
  if (words.empty()) throw InputError("WaM: no word has both a category and a tokenization");
  std::map<std::string, std::vector<std::string>> nonshared;
  std::set<std::string> candidate_subwords;
  for (const auto& w : words) {
    for (const auto& s : reference.words.at(w)) {
      if (shared.count(s)) continue;
      nonshared[w].push_back(s);
      candidate_subwords.insert(s);
    }
  }

  PortableRng rng(options.seed);
  rng.Shuffle(words);
  const auto& sz = options.sizes;
  const double eval_share = static_cast<double>(sz.dev + sz.test) /
                            static_cast<double>(std::max<size_t>(1, sz.total()));
  const size_t eval_target =
      static_cast<size_t>(std::ceil(eval_share * static_cast<double>(words.size())));

  // Reserve non-shared subwords for evaluation until enough words carry one.
  std::vector<std::string> order(candidate_subwords.begin(), candidate_subwords.end());
  rng.Shuffle(order);
  std::unordered_map<std::string, std::vector<std::string>> words_with;
  for (const auto& [w, subs] : nonshared)
    for (const auto& s : subs) words_with[s].push_back(w);
  std::unordered_set<std::string> reserved;
  std::unordered_set<std::string> eval_words;
  for (const auto& s : order) {
    if (eval_words.size() >= eval_target) break;
    reserved.insert(s);
    for (const auto& w : words_with[s]) eval_words.insert(w);
  }
  std::vector<std::string> train_pool, eval_pool;
  for (const auto& w : words)
    (eval_words.count(w) ? eval_pool : train_pool).push_back(w);
  const auto eval_pools = Partition(
      eval_pool, {0.0, static_cast<double>(sz.dev), static_cast<double>(sz.test)});
  const std::array<const std::vector<std::string>*, 3> pools = {
      &train_pool, &eval_pools[1], &eval_pools[2]};
  spdlog::info("WaM: {} reserved subwords; {} train / {} dev / {} test words",
               reserved.size(), train_pool.size(), eval_pools[1].size(),
               eval_pools[2].size());

  std::vector<ChallengeInstance> out;
  for (Split split : kSplits) {
    const auto& pool = *pools[static_cast<size_t>(split)];
    // Candidate queues per (category, label).
    std::array<std::array<std::vector<std::string>, 2>, 3> queues;
    for (size_t c = 0; c < 3; ++c) {
      for (const auto& w : pool) {
        const bool has = categories.at(w).count(std::string(kCategories[c])) > 0;
        queues[c][has ? 1 : 0].push_back(w);
      }
      rng.Shuffle(queues[c][0]);
      rng.Shuffle(queues[c][1]);
    }
    std::array<std::array<size_t, 2>, 3> next{};
    std::vector<ChallengeInstance> rows;
    const size_t requested = sz[split];
    for (size_t i = 0; i < requested; ++i) {
      const size_t c = i % 3;
      const size_t l = (i + 1) % 2;  // slot 0 is a positive
      auto& q = queues[c][l];
      if (next[c][l] >= q.size()) {
        spdlog::warn("WaM {}: ran out of words for ({}, {}); shrinking {} -> {}",
                     SplitName(split), kCategories[c], l == 1, requested, i);
        break;
      }
      ChallengeInstance inst;
      inst.first = q[next[c][l]++];
      inst.second = std::string(kCategories[c]);
      inst.label = l == 1;
      rows.push_back(std::move(inst));
    }
    Finalize(Task::kWaM, split, rows, rng, &out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// WaW

std::vector<ChallengeInstance> GenerateWaW(const RelationPool& pool,
                                           const WawOptions& options) {
  PortableRng rng(options.seed);
  std::vector<std::string> words = pool.Words();
  if (words.size() < 6) throw InputError("WaW needs a larger relation pool");
  rng.Shuffle(words);
  const auto& sz = options.sizes;
  // Pairs inside a pool grow with the square of its word share.
  const auto word_pools = Partition(
      words, {std::sqrt(static_cast<double>(sz.train)),
              std::sqrt(static_cast<double>(sz.dev)),
              std::sqrt(static_cast<double>(sz.test))});
  std::unordered_map<std::string, size_t> pool_of;
  for (size_t s = 0; s < 3; ++s)
    for (const auto& w : word_pools[s]) pool_of[w] = s;

  std::array<std::vector<size_t>, 3> inside;
  for (size_t i = 0; i < pool.pairs().size(); ++i) {
    const auto& p = pool.pairs()[i];
    const size_t a = pool_of.at(p[0]);
    if (a == pool_of.at(p[1])) inside[a].push_back(i);
  }

  std::vector<ChallengeInstance> out;
  for (Split split : kSplits) {
    const size_t s = static_cast<size_t>(split);
    const auto& ws = word_pools[s];
    const size_t requested = sz[split];
    size_t npos = (requested + 1) / 2;
    size_t nneg = requested / 2;
    auto& candidates = inside[s];
    rng.Shuffle(candidates);
    if (candidates.size() < npos) {
      spdlog::warn("WaW {}: only {} in-split pool pairs for {} positives; shrinking",
                   SplitName(split), candidates.size(), npos);
      npos = candidates.size();
      nneg = std::min(nneg, npos);
    }
    std::vector<ChallengeInstance> rows;
    for (size_t i = 0; i < npos; ++i) {
      const auto& p = pool.pairs()[candidates[i]];
      ChallengeInstance inst;
      // Random order within the pair so position carries no signal.
      const bool flip = rng.Below(2) == 1;
      inst.first = flip ? p[1] : p[0];
      inst.second = flip ? p[0] : p[1];
      inst.label = true;
      inst.provenance = p[2];
      rows.push_back(std::move(inst));
    }
    std::set<std::pair<std::string, std::string>> used;
    size_t made = 0;
    int misses = 0;
    while (made < nneg && ws.size() >= 2) {
      const auto& a = ws[rng.Below(ws.size())];
      const auto& b = ws[rng.Below(ws.size())];
      const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      if (a == b || pool.Contains(a, b) || used.count(key)) {
        if (++misses > options.max_negative_retries) break;
        continue;
      }
      misses = 0;
      used.insert(key);
      ChallengeInstance inst;
      inst.first = a;
      inst.second = b;
      inst.label = false;
      rows.push_back(std::move(inst));
      ++made;
    }
    if (made < nneg) {
      spdlog::warn("WaW {}: negative sampling stalled at {} of {}; trimming",
                   SplitName(split), made, nneg);
      std::vector<ChallengeInstance> kept;
      size_t pos_seen = 0;
      for (auto& r : rows)
        if (!r.label || pos_seen++ < made + 1) kept.push_back(std::move(r));
      rows = std::move(kept);
    }
    Finalize(Task::kWaW, split, rows, rng, &out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output

nlohmann::json WriteChallenge(const std::string& dir, Task task,
                              const std::vector<ChallengeInstance>& instances,
                              const SplitSizes& requested, uint64_t seed,
                              const std::vector<InputChecksum>& inputs) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["format"] = "morphtok-challenge-manifest";
  manifest["version"] = 1;
  manifest["generator"] = std::string("morphtok ") + MORPHTOK_VERSION;
  manifest["task"] = TaskName(task);
  manifest["seed"] = seed;
  manifest["requested_sizes"] = {
      {"train", requested.train}, {"dev", requested.dev}, {"test", requested.test}};
  auto& in = manifest["inputs"] = nlohmann::json::array();
  for (const auto& i : inputs) in.push_back({{"path", i.path}, {"sha256", i.sha256}});
  auto& outputs = manifest["outputs"] = nlohmann::json::array();
  nlohmann::json sizes;
  for (Split split : kSplits) {
    std::string text;
    size_t count = 0;
    size_t positives = 0;
    for (const auto& inst : instances) {
      if (inst.task != task || inst.split != split) continue;
      text += inst.ToJson().dump() + "\n";
      ++count;
      positives += inst.label ? 1 : 0;
    }
    const std::string file =
        std::string(TaskName(task)) + "-" + std::string(SplitName(split)) + ".jsonl";
    WriteFile((std::filesystem::path(dir) / file).string(), text);
    sizes[std::string(SplitName(split))] = count;
    outputs.push_back({{"split", SplitName(split)},
                       {"file", file},
                       {"count", count},
                       {"positives", positives},
                       {"sha256", Sha256Hex(text)}});
  }
  manifest["sizes"] = sizes;
  WriteFile((std::filesystem::path(dir) /
             (std::string(TaskName(task)) + "-manifest.json"))
                .string(),
            manifest.dump(2) + "\n");
  return manifest;
}

std::vector<ChallengeInstance> ReadChallengeJsonl(const std::string& path) {
  std::vector<ChallengeInstance> out;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty()) continue;
    try {
      out.push_back(ChallengeInstance::FromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace morphtok
