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

#include "morphtok/sweep.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <thread>

#include "morphtok/merge_list.h"

namespace morphtok {

std::vector<DistributionRow> SweepStats(
    const BpeModel& model, const std::vector<BpeCheckpoint>& checkpoints,
    const std::vector<std::string>& words, const MorphLexicon& lexicon,
    const SweepOptions& options) {
  const size_t num_checkpoints = checkpoints.size();
  std::vector<Vocabulary> vocabularies;
  vocabularies.reserve(num_checkpoints);
  for (const auto& cp : checkpoints)
    vocabularies.push_back(model.VocabularyAt(cp.merges));

  using Counts = std::vector<std::array<uint64_t, 4>>;
  const size_t threads = static_cast<size_t>(
      std::clamp<int>(options.threads, 1, std::max<int>(1, static_cast<int>(words.size()))));
  std::vector<Counts> partial(threads, Counts(num_checkpoints));
  std::vector<std::exception_ptr> errors(threads);
  size_t unknown_words = 0;
  std::vector<size_t> unknown_partial(threads, 0);

  auto work = [&](size_t t) {
    try {
      const size_t begin = words.size() * t / threads;
      const size_t end = words.size() * (t + 1) / threads;
      for (size_t w = begin; w < end; ++w) {
        const std::string& word = words[w];
        const auto lists = BuildMergeLists(word, lexicon);
        bool unknown = false;
        for (size_t c = 0; c < num_checkpoints; ++c) {
          const BpeTokenization tok = model.Tokenize(word, checkpoints[c].merges);
          unknown = unknown || tok.has_unknown();
          const Labeller labeller(&lexicon, &vocabularies[c]);
          const Label label = labeller.LabelWithLists(word, tok.subwords, lists);
          ++partial[t][c][static_cast<size_t>(label.value)];
        }
        unknown_partial[t] += unknown ? 1 : 0;
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (size_t u : unknown_partial) unknown_words += u;
  if (unknown_words > 0)
    spdlog::warn("{} words contain characters outside the BPE alphabet",
                 unknown_words);

  std::vector<DistributionRow> rows;
  for (size_t c = 0; c < num_checkpoints; ++c) {
    DistributionRow row;
    row.size = checkpoints[c].size;
    row.merges = checkpoints[c].merges;
    row.vocab_size = model.VocabularySize(checkpoints[c].merges);
    for (size_t t = 0; t < threads; ++t)
      for (size_t l = 0; l < 4; ++l) row.counts[l] += partial[t][c][l];
    const double total = static_cast<double>(row.total());
    for (size_t l = 0; l < 4; ++l)
      row.fractions[l] = total > 0 ? static_cast<double>(row.counts[l]) / total : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string SweepCsv(const std::vector<DistributionRow>& rows) {
  std::string out =
      "size,vocab,morph,alien,na,vocab_frac,morph_frac,alien_frac,na_frac\n";
  char buf[64];
  for (const auto& row : rows) {
    out += std::to_string(row.size);
    for (auto c : row.counts) out += "," + std::to_string(c);
    for (double f : row.fractions) {
      std::snprintf(buf, sizeof(buf), ",%.17g", f);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace morphtok
