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

#include "morphtok/bpe.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <unordered_set>

#include "morphtok/common.h"

namespace morphtok {
namespace {

constexpr char kModelFormat[] = "morphtok-bpe";
constexpr int kModelVersion = 1;

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

std::string PairKey(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back('\0');
  key.append(right);
  return key;
}

}  // namespace

WordCounts CountWords(const std::string& path, bool lowercase) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read corpus: " + path);
  WordCounts counts;
  std::string word;
  auto flush = [&] {
    // Trailing apostrophes are punctuation, not part of the word.
    while (!word.empty() && word.back() == '\'') word.pop_back();
    if (!word.empty()) ++counts[lowercase ? ToLower(word) : word];
    word.clear();
  };
  std::vector<char> buf(1 << 20);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      const auto c = static_cast<unsigned char>(buf[static_cast<size_t>(i)]);
      if (IsWordByte(c) || (c == '\'' && !word.empty())) {
        word.push_back(static_cast<char>(c));
      } else {
        flush();
      }
    }
  }
  flush();
  return counts;
}

std::vector<std::pair<std::string, uint64_t>> TopWords(const WordCounts& counts,
                                                       size_t n) {
  std::vector<std::pair<std::string, uint64_t>> all(counts.begin(), counts.end());
  auto by_freq = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (n < all.size()) {
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n),
                      all.end(), by_freq);
    all.resize(n);
  } else {
    std::sort(all.begin(), all.end(), by_freq);
  }
  return all;
}

std::vector<std::pair<std::string, uint64_t>> ReadWordList(
    const std::string& path) {
  std::vector<std::pair<std::string, uint64_t>> out;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    const auto trimmed = TrimView(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto cols = SplitString(trimmed, '\t');
    uint64_t count = 1;
    if (cols.size() >= 2) {
      try {
        count = std::stoull(cols[1]);
      } catch (const std::exception&) {
        throw InputError(path + ":" + std::to_string(line_no) +
                         ": bad count '" + cols[1] + "'");
      }
    }
    out.emplace_back(cols[0], count);
  }
  return out;
}

void WriteWordList(const std::string& path,
                   const std::vector<std::pair<std::string, uint64_t>>& words) {
  std::string text;
  for (const auto& [w, c] : words) text += w + "\t" + std::to_string(c) + "\n";
  WriteFile(path, text);
}

std::vector<std::string> InitialSymbols(std::string_view word) {
  std::vector<std::string> symbols = Utf8Chars(word);
  if (!symbols.empty()) symbols.front() = AddMarker(symbols.front());
  return symbols;
}

// ---------------------------------------------------------------------------
// BpeModel

BpeModel::BpeModel(std::vector<std::string> alphabet,
                   std::vector<BpeMerge> merges,
                   std::vector<BpeCheckpoint> checkpoints)
    : alphabet_(std::move(alphabet)),
      merges_(std::move(merges)),
      checkpoints_(std::move(checkpoints)) {
  Index();
}

void BpeModel::Index() {
  std::sort(alphabet_.begin(), alphabet_.end());
  std::unordered_set<std::string> seen(alphabet_.begin(), alphabet_.end());
  size_after_.assign(1, seen.size());
  ranks_.clear();
  for (size_t i = 0; i < merges_.size(); ++i) {
    seen.insert(merges_[i].Result());
    size_after_.push_back(seen.size());
    ranks_[PairKey(merges_[i].left, merges_[i].right)].push_back(i);
  }
}

size_t BpeModel::VocabularySize(size_t merges) const {
  return size_after_[std::min(merges, merges_.size())];
}

size_t BpeModel::MergesForSize(size_t size) const {
  auto it = std::lower_bound(size_after_.begin(), size_after_.end(), size);
  if (it == size_after_.end()) return merges_.size();
  return static_cast<size_t>(it - size_after_.begin());
}

Vocabulary BpeModel::VocabularyAt(size_t merges) const {
  Vocabulary vocab(alphabet_);
  merges = std::min(merges, merges_.size());
  for (size_t i = 0; i < merges; ++i) vocab.Insert(merges_[i].Result());
  return vocab;
}

BpeTokenization BpeModel::Tokenize(std::string_view word, size_t merges) const {
  if (word.empty()) throw InputError("cannot tokenize an empty word");
  merges = std::min(merges, merges_.size());
  std::vector<std::string> symbols = InitialSymbols(word);
  std::vector<bool> unknown(symbols.size(), false);
  for (size_t i = 0; i < symbols.size(); ++i)
    unknown[i] = !std::binary_search(alphabet_.begin(), alphabet_.end(), symbols[i]);

  // Sequential replay: at step t, apply the earliest rule with index >= t
  // that matches somewhere in the word, then continue after it.
  size_t t = 0;
  while (symbols.size() > 1) {
    size_t best = merges;
    for (size_t i = 0; i + 1 < symbols.size(); ++i) {
      if (unknown[i] || unknown[i + 1]) continue;
      auto it = ranks_.find(PairKey(symbols[i], symbols[i + 1]));
      if (it == ranks_.end()) continue;
      auto r = std::lower_bound(it->second.begin(), it->second.end(), t);
      if (r != it->second.end() && *r < best) best = *r;
    }
    if (best >= merges) break;
    const BpeMerge& rule = merges_[best];
    std::vector<std::string> next;
    std::vector<bool> next_unknown;
    for (size_t i = 0; i < symbols.size(); ++i) {
      if (i + 1 < symbols.size() && !unknown[i] && !unknown[i + 1] &&
          symbols[i] == rule.left && symbols[i + 1] == rule.right) {
        next.push_back(rule.Result());
        next_unknown.push_back(false);
        ++i;
      } else {
        next.push_back(std::move(symbols[i]));
        next_unknown.push_back(unknown[i]);
      }
    }
    symbols = std::move(next);
    unknown = std::move(next_unknown);
    t = best + 1;
  }

  BpeTokenization out;
  out.subwords.tokens = std::move(symbols);
  for (size_t i = 0; i < unknown.size(); ++i)
    if (unknown[i]) out.unknown_positions.push_back(i);
  return out;
}

nlohmann::json BpeModel::ToJson() const {
  nlohmann::json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelVersion;
  doc["alphabet"] = alphabet_;
  auto& merges = doc["merges"] = nlohmann::json::array();
  for (const auto& m : merges_) merges.push_back({m.left, m.right});
  auto& checkpoints = doc["checkpoints"] = nlohmann::json::array();
  for (const auto& c : checkpoints_)
    checkpoints.push_back({{"size", c.size}, {"merges", c.merges}});
  return doc;
}

BpeModel BpeModel::FromJson(const nlohmann::json& doc) {
  try {
    if (doc.at("format") != kModelFormat)
      throw InputError("not a morphtok BPE model");
    if (doc.at("version") != kModelVersion)
      throw InputError("unsupported BPE model version " +
                       doc.at("version").dump());
    std::vector<BpeMerge> merges;
    for (const auto& m : doc.at("merges"))
      merges.push_back({m.at(0).get<std::string>(), m.at(1).get<std::string>()});
    std::vector<BpeCheckpoint> checkpoints;
    for (const auto& c : doc.at("checkpoints"))
      checkpoints.push_back({c.at("size").get<size_t>(), c.at("merges").get<size_t>()});
    auto alphabet = doc.at("alphabet").get<std::vector<std::string>>();
    return BpeModel(std::move(alphabet), std::move(merges), std::move(checkpoints));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed BPE model: ") + e.what());
  }
}

void BpeModel::Save(const std::string& path) const {
  WriteFile(path, ToJson().dump() + "\n");
}

BpeModel BpeModel::Load(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("cannot parse BPE model " + path + ": " + e.what());
  }
  return FromJson(doc);
}

// ---------------------------------------------------------------------------
// Training

namespace {

struct PairId {
  uint32_t left;
  uint32_t right;

  uint64_t Key() const { return (uint64_t{left} << 32) | right; }
};

class Trainer {
 public:
  explicit Trainer(const WordCounts& counts) {
    for (const auto& [word, freq] : counts) {
      if (word.empty() || freq == 0) continue;
      std::vector<uint32_t> ids;
      for (const auto& s : InitialSymbols(word)) ids.push_back(Intern(s));
      words_.push_back(std::move(ids));
      freqs_.push_back(freq);
    }
    alphabet_size_ = symbols_.size();
    for (size_t w = 0; w < words_.size(); ++w) AddPairs(w, +1);
    for (const auto& [key, count] : pair_counts_)
      if (count > 0) Push(key, count);
  }

  size_t vocab_size() const { return symbols_.size(); }
  size_t alphabet_size() const { return alphabet_size_; }
  std::vector<std::string> Alphabet() const {
    std::vector<std::string> out(symbols_.begin(),
                                 symbols_.begin() + static_cast<std::ptrdiff_t>(alphabet_size_));
    std::sort(out.begin(), out.end());
    return out;
  }

  // Applies the best pair; false when no pair is left.
  bool Step(BpeMerge* merge) {
    while (!heap_.empty()) {
      const Entry top = heap_.top();
      heap_.pop();
      auto it = pair_counts_.find(top.key);
      if (it == pair_counts_.end() || it->second != top.count) continue;
      const PairId pair{static_cast<uint32_t>(top.key >> 32),
                        static_cast<uint32_t>(top.key & 0xffffffffu)};
      *merge = {symbols_[pair.left], symbols_[pair.right]};
      Apply(pair, Intern(merge->Result()));
      return true;
    }
    return false;
  }

 private:
  struct Entry {
    uint64_t count;
    uint64_t key;
    const std::vector<std::string>* symbols;

    const std::string& left() const { return (*symbols)[key >> 32]; }
    const std::string& right() const { return (*symbols)[key & 0xffffffffu]; }
  };
  struct EntryLess {
    // priority_queue pops the "largest": highest count, then smallest pair.
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.count != b.count) return a.count < b.count;
      const int l = a.left().compare(b.left());
      if (l != 0) return l > 0;
      return a.right() > b.right();
    }
  };

  uint32_t Intern(const std::string& s) {
    auto [it, inserted] = ids_.emplace(s, static_cast<uint32_t>(symbols_.size()));
    if (inserted) symbols_.push_back(s);
    return it->second;
  }

  void Push(uint64_t key, uint64_t count) {
    heap_.push({count, key, &symbols_});
  }

  void AddPairs(size_t w, int sign) {
    const auto& ids = words_[w];
    for (size_t i = 0; i + 1 < ids.size(); ++i) {
      const uint64_t key = PairId{ids[i], ids[i + 1]}.Key();
      uint64_t& c = pair_counts_[key];
      if (sign > 0) {
        c += freqs_[w];
        where_[key].insert(static_cast<uint32_t>(w));
      } else {
        c -= freqs_[w];
      }
      touched_.insert(key);
    }
  }

  void Apply(PairId pair, uint32_t merged) {
    const uint64_t key = pair.Key();
    // Copy: AddPairs mutates where_.
    const std::vector<uint32_t> affected(where_[key].begin(), where_[key].end());
    touched_.clear();
    for (uint32_t w : affected) {
      auto& ids = words_[w];
      bool present = false;
      for (size_t i = 0; i + 1 < ids.size(); ++i)
        present = present || (ids[i] == pair.left && ids[i + 1] == pair.right);
      if (!present) continue;
      AddPairs(w, -1);
      std::vector<uint32_t> next;
      next.reserve(ids.size());
      for (size_t i = 0; i < ids.size(); ++i) {
        if (i + 1 < ids.size() && ids[i] == pair.left && ids[i + 1] == pair.right) {
          next.push_back(merged);
          ++i;
        } else {
          next.push_back(ids[i]);
        }
      }
      ids = std::move(next);
      AddPairs(w, +1);
    }
    where_.erase(key);
    for (uint64_t k : touched_) {
      auto it = pair_counts_.find(k);
      if (it == pair_counts_.end()) continue;
      if (it->second == 0) {
        pair_counts_.erase(it);
        where_.erase(k);
      } else {
        Push(k, it->second);
      }
    }
  }

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, uint32_t> ids_;
  size_t alphabet_size_ = 0;
  std::vector<std::vector<uint32_t>> words_;
  std::vector<uint64_t> freqs_;
  std::unordered_map<uint64_t, uint64_t> pair_counts_;
  // Word ids that contained the pair at some point (may be stale).
  std::unordered_map<uint64_t, std::set<uint32_t>> where_;
  std::unordered_set<uint64_t> touched_;
  std::priority_queue<Entry, std::vector<Entry>, EntryLess> heap_;
};

}  // namespace

BpeModel TrainBpe(const WordCounts& counts, const BpeTrainOptions& options) {
  if (counts.empty()) throw InputError("cannot train BPE on empty word counts");
  if (options.checkpoint_step == 0)
    throw InputError("checkpoint step must be positive");
  Trainer trainer(counts);
  if (trainer.alphabet_size() == 0)
    throw InputError("cannot train BPE on empty word counts");
  if (options.max_size <= trainer.alphabet_size())
    throw InputError("max size " + std::to_string(options.max_size) +
                     " must exceed the base alphabet size " +
                     std::to_string(trainer.alphabet_size()));

  std::vector<BpeMerge> merges;
  BpeMerge merge;
  while (trainer.vocab_size() < options.max_size) {
    if (!trainer.Step(&merge)) {
      spdlog::warn("BPE training exhausted the corpus at vocabulary size {} "
                   "(requested {}); truncating",
                   trainer.vocab_size(), options.max_size);
      break;
    }
    merges.push_back(merge);
  }

  BpeModel model(trainer.Alphabet(), std::move(merges), {});
  std::vector<BpeCheckpoint> checkpoints;
  for (size_t size = options.checkpoint_step; size <= options.max_size;
       size += options.checkpoint_step)
    checkpoints.push_back({size, model.MergesForSize(size)});
  return BpeModel(model.alphabet(), model.merges(), std::move(checkpoints));
}

}  // namespace morphtok
