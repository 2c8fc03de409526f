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

#ifndef MORPHTOK_SWEEP_H_
#define MORPHTOK_SWEEP_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "morphtok/bpe.h"
#include "morphtok/labeller.h"
#include "morphtok/lexicon.h"

namespace morphtok {

// Label distribution of a word list at one vocabulary size.
struct DistributionRow {
  size_t size = 0;        // requested checkpoint size
  size_t merges = 0;      // merge rules in effect
  size_t vocab_size = 0;  // distinct symbols actually reached
  // Indexed by LabelValue: vocab, morph, alien, na.
  std::array<uint64_t, 4> counts{};
  std::array<double, 4> fractions{};

  uint64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

struct SweepOptions {
  int threads = 1;
};

// Tokenizes every word at every checkpoint and labels the result against the
// checkpoint's vocabulary. One row per checkpoint, in the given order.
std::vector<DistributionRow> SweepStats(
    const BpeModel& model, const std::vector<BpeCheckpoint>& checkpoints,
    const std::vector<std::string>& words, const MorphLexicon& lexicon,
    const SweepOptions& options = {});

// size,vocab,morph,alien,na,vocab_frac,morph_frac,alien_frac,na_frac
std::string SweepCsv(const std::vector<DistributionRow>& rows);

}  // namespace morphtok

#endif  // MORPHTOK_SWEEP_H_
