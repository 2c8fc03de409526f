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

#ifndef MORPHTOK_TESTS_DATASET_CHECKER_H_
#define MORPHTOK_TESTS_DATASET_CHECKER_H_

// Constraint checker for emitted challenge files. It parses the JSONL output
// directly and re-derives every constraint from the raw inputs, without
// going through the generator's own data structures.

#include <algorithm>
#include <array>
#include <climits>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

namespace morphtok::testing {

struct CheckReport {
  std::vector<std::string> violations;
  std::map<std::string, size_t> counts;  // split -> rows

  bool ok() const { return violations.empty(); }
  void Fail(std::string msg) {
    if (violations.size() < 50) violations.push_back(std::move(msg));
  }
};

inline std::vector<nlohmann::json> ReadJsonl(const std::string& path) {
  std::vector<nlohmann::json> rows;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(nlohmann::json::parse(line));
  return rows;
}

inline std::map<std::string, std::vector<nlohmann::json>> ReadTaskSplits(
    const std::string& dir, const std::string& task) {
  std::map<std::string, std::vector<nlohmann::json>> out;
  for (const char* split : {"train", "dev", "test"})
    out[split] = ReadJsonl(dir + "/" + task + "-" + split + ".jsonl");
  return out;
}

inline std::string PairKey(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return a + "\t" + b;
}

// Checks shared by every task: sizes, unique ids, split field, label balance.
inline void CheckCommon(const std::map<std::string, std::vector<nlohmann::json>>& splits,
                        const std::map<std::string, size_t>& sizes,
                        const std::string& task, CheckReport* report) {
  std::set<std::string> ids;
  for (const auto& [split, rows] : splits) {
    report->counts[split] = rows.size();
    if (rows.size() != sizes.at(split))
      report->Fail(task + " " + split + ": " + std::to_string(rows.size()) +
                   " rows, expected " + std::to_string(sizes.at(split)));
    long balance = 0;
    for (const auto& r : rows) {
      if (!ids.insert(r.at("id").get<std::string>()).second)
        report->Fail("duplicate id " + r.at("id").get<std::string>());
      if (r.at("split") != split || r.at("task") != task)
        report->Fail("row " + r.at("id").get<std::string>() + " in wrong file");
      balance += r.at("label").get<bool>() ? 1 : -1;
    }
    if (balance > 1 || balance < -1)
      report->Fail(task + " " + split + ": label imbalance " + std::to_string(balance));
  }
}

inline void CheckDisjoint(const std::map<std::string, std::set<std::string>>& words,
                          const std::string& task, CheckReport* report) {
  for (const char* eval : {"dev", "test"}) {
    size_t overlap = 0;
    for (const auto& w : words.at(eval)) overlap += words.at("train").count(w);
    if (overlap > 0)
      report->Fail(task + " " + eval + ": " + std::to_string(overlap) +
                   " words also occur in train");
  }
}

// WaD: positives are true senses, negatives are not; dev/test negatives name
// an original word that owns the definition.
inline CheckReport CheckWaD(const std::string& dir,
                            const std::map<std::string, size_t>& sizes,
                            const std::multimap<std::string, std::string>& senses) {
  CheckReport report;
  const auto splits = ReadTaskSplits(dir, "wad");
  CheckCommon(splits, sizes, "wad", &report);
  std::set<std::pair<std::string, std::string>> truth;
  for (const auto& [w, d] : senses) truth.insert({w, d});
  std::map<std::string, std::set<std::string>> words;
  for (const auto& [split, rows] : splits) {
    auto& ws = words[split];
    for (const auto& r : rows) {
      const auto w = r.at("word").get<std::string>();
      const auto d = r.at("definition").get<std::string>();
      ws.insert(w);
      const bool label = r.at("label").get<bool>();
      if (label != truth.count({w, d}) > 0)
        report.Fail("wad " + r.at("id").get<std::string>() + ": label disagrees with dump");
      if (!label && split != "train") {
        if (r.at("provenance").is_null()) {
          report.Fail("wad " + r.at("id").get<std::string>() + ": no original word");
          continue;
        }
        const auto orig = r.at("provenance").get<std::string>();
        if (orig == w || !truth.count({orig, d}))
          report.Fail("wad " + r.at("id").get<std::string>() + ": bad original word");
        ws.insert(orig);
      }
    }
  }
  CheckDisjoint(words, "wad", &report);
  return report;
}

// WaM: category balance, and every dev/test word carries a subword outside
// the shared list and outside every train word's subwords.
inline CheckReport CheckWaM(
    const std::string& dir, const std::map<std::string, size_t>& sizes,
    const std::map<std::string, std::set<std::string>>& categories,
    const std::unordered_map<std::string, std::vector<std::string>>& tokenization,
    const std::vector<std::string>& ranked, size_t shared_count) {
  CheckReport report;
  const auto splits = ReadTaskSplits(dir, "wam");
  CheckCommon(splits, sizes, "wam", &report);
  std::unordered_set<std::string> shared(
      ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(
                                           std::min(shared_count, ranked.size())));
  std::unordered_set<std::string> train_subwords;
  std::map<std::string, std::set<std::string>> words;
  for (const auto& [split, rows] : splits) {
    std::map<std::string, long> per_category;
    for (const auto& r : rows) {
      const auto w = r.at("word").get<std::string>();
      const auto c = r.at("category").get<std::string>();
      words[split].insert(w);
      if (c != "inflection" && c != "derivation" && c != "compound")
        report.Fail("wam: bad category " + c);
      ++per_category[c];
      auto it = categories.find(w);
      const bool truth = it != categories.end() && it->second.count(c) > 0;
      if (truth != r.at("label").get<bool>())
        report.Fail("wam " + r.at("id").get<std::string>() + ": label disagrees");
      if (split == "train") {
        auto tok = tokenization.find(w);
        if (tok == tokenization.end()) {
          report.Fail("wam: train word without tokenization " + w);
          continue;
        }
        train_subwords.insert(tok->second.begin(), tok->second.end());
      }
    }
    long lo = rows.empty() ? 0 : LONG_MAX, hi = 0;
    for (const char* c : {"inflection", "derivation", "compound"}) {
      lo = std::min(lo, per_category[c]);
      hi = std::max(hi, per_category[c]);
    }
    if (hi - lo > 1) report.Fail("wam " + split + ": category imbalance");
  }
  for (const char* eval : {"dev", "test"}) {
    for (const auto& w : words[eval]) {
      auto tok = tokenization.find(w);
      bool unseen = false;
      if (tok != tokenization.end())
        for (const auto& s : tok->second)
          unseen = unseen || (!shared.count(s) && !train_subwords.count(s));
      if (!unseen) report.Fail(std::string("wam ") + eval + ": no unseen subword in " + w);
    }
  }
  CheckDisjoint(words, "wam", &report);
  return report;
}

// WaW: positives come from the pool, negatives are absent from it.
inline CheckReport CheckWaW(const std::string& dir,
                            const std::map<std::string, size_t>& sizes,
                            const std::vector<std::array<std::string, 3>>& pool) {
  CheckReport report;
  const auto splits = ReadTaskSplits(dir, "waw");
  CheckCommon(splits, sizes, "waw", &report);
  std::unordered_set<std::string> keys;
  for (const auto& p : pool) keys.insert(PairKey(p[0], p[1]));
  std::map<std::string, std::set<std::string>> words;
  for (const auto& [split, rows] : splits) {
    std::set<std::string> seen_pairs;
    for (const auto& r : rows) {
      const auto a = r.at("word_a").get<std::string>();
      const auto b = r.at("word_b").get<std::string>();
      words[split].insert(a);
      words[split].insert(b);
      const bool in_pool = keys.count(PairKey(a, b)) > 0;
      if (a == b) report.Fail("waw: self pair " + a);
      if (in_pool != r.at("label").get<bool>())
        report.Fail("waw " + r.at("id").get<std::string>() +
                    (in_pool ? ": negative found in pool" : ": positive not in pool"));
      if (!seen_pairs.insert(PairKey(a, b)).second)
        report.Fail("waw " + split + ": duplicate pair " + a + "/" + b);
    }
  }
  CheckDisjoint(words, "waw", &report);
  return report;
}

}  // namespace morphtok::testing

#endif  // MORPHTOK_TESTS_DATASET_CHECKER_H_
