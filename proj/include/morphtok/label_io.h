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

#ifndef MORPHTOK_LABEL_IO_H_
#define MORPHTOK_LABEL_IO_H_

// Row formats shared by the label command, the harness and external
// bindings:
//   JSONL  {"word": "jogging", "subwords": ["_j", "ogging"]}
//   TSV    jogging<TAB>_j<TAB>ogging
// Labelled output adds "label" and "mu" (null for vocab and na). JSON output
// is canonical: keys sorted, no insignificant whitespace.

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "morphtok/labeller.h"
#include "morphtok/vocabulary.h"

namespace morphtok {

enum class RowFormat { kJsonl, kTsv };

// ".tsv" selects TSV; anything else is JSONL.
RowFormat RowFormatForPath(std::string_view path);
RowFormat ParseRowFormat(std::string_view name);

struct TokenizedWord {
  std::string word;
  std::vector<std::string> subwords;  // raw, before marker normalization
};

// Parses one row; throws InputError on malformed input.
TokenizedWord ParseTokenizedRow(std::string_view line, RowFormat format);
std::vector<TokenizedWord> ReadTokenizedWords(const std::string& path,
                                              RowFormat format);

// word -> normalized subwords. Later rows for the same word win.
std::unordered_map<std::string, SubwordSequence> ReadTokenizationTable(
    const std::string& path, RowFormat format, MarkerScheme scheme);

struct LabelledWord {
  std::string word;
  SubwordSequence subwords;
  Label label;

  friend bool operator==(const LabelledWord&, const LabelledWord&) = default;
};

// Labels every row, preserving order. The first failing row aborts with its
// zero-based index in the message.
std::vector<LabelledWord> LabelBatch(const Labeller& labeller,
                                     const std::vector<TokenizedWord>& rows,
                                     MarkerScheme scheme, int threads = 1);

nlohmann::json LabelToJson(const LabelledWord& row);
std::string CanonicalJsonLine(const LabelledWord& row);
std::string TsvLine(const LabelledWord& row);

void WriteLabels(const std::string& path, const std::vector<LabelledWord>& rows,
                 RowFormat format);
// Reads labelled output back (either format).
std::vector<LabelledWord> ReadLabels(const std::string& path, RowFormat format);

}  // namespace morphtok

#endif  // MORPHTOK_LABEL_IO_H_
