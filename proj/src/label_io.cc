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

#include "morphtok/label_io.h"

#include <exception>
#include <thread>

#include "morphtok/common.h"

namespace morphtok {

RowFormat RowFormatForPath(std::string_view path) {
  const auto dot = path.rfind('.');
  if (dot != std::string_view::npos && ToLower(path.substr(dot)) == ".tsv")
    return RowFormat::kTsv;
  return RowFormat::kJsonl;
}

RowFormat ParseRowFormat(std::string_view name) {
  if (name == "jsonl" || name == "json") return RowFormat::kJsonl;
  if (name == "tsv") return RowFormat::kTsv;
  throw InputError("unknown row format: " + std::string(name));
}

TokenizedWord ParseTokenizedRow(std::string_view line, RowFormat format) {
  TokenizedWord row;
  if (format == RowFormat::kTsv) {
    auto cols = SplitString(line, '\t');
    if (cols.size() < 2) throw InputError("expected word and at least one subword");
    row.word = cols[0];
    // A single second column may hold space-separated subwords.
    if (cols.size() == 2) {
      row.subwords = SplitWhitespace(cols[1]);
    } else {
      row.subwords.assign(cols.begin() + 1, cols.end());
    }
  } else {
    try {
      const auto doc = nlohmann::json::parse(line);
      row.word = doc.at("word").get<std::string>();
      row.subwords = doc.at("subwords").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError(e.what());
    }
  }
  if (row.word.empty()) throw InputError("empty word");
  if (row.subwords.empty()) throw InputError("no subwords for '" + row.word + "'");
  return row;
}

std::vector<TokenizedWord> ReadTokenizedWords(const std::string& path,
                                              RowFormat format) {
  std::vector<TokenizedWord> rows;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty() || line[0] == '#') continue;
    try {
      rows.push_back(ParseTokenizedRow(line, format));
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::unordered_map<std::string, SubwordSequence> ReadTokenizationTable(
    const std::string& path, RowFormat format, MarkerScheme scheme) {
  std::unordered_map<std::string, SubwordSequence> table;
  for (auto& row : ReadTokenizedWords(path, format))
    table[row.word] = NormalizeSubwords(row.subwords, scheme);
  return table;
}

std::vector<LabelledWord> LabelBatch(const Labeller& labeller,
                                     const std::vector<TokenizedWord>& rows,
                                     MarkerScheme scheme, int threads) {
  std::vector<LabelledWord> out(rows.size());
  const size_t n = rows.size();
  const size_t workers =
      std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(std::max(threads, 1)), n));
  std::vector<size_t> failed_at(workers, SIZE_MAX);
  std::vector<std::string> failure(workers);
  auto work = [&](size_t t) {
    const size_t begin = n * t / workers, end = n * (t + 1) / workers;
    for (size_t i = begin; i < end; ++i) {
      try {
        LabelledWord& r = out[i];
        r.word = rows[i].word;
        r.subwords = NormalizeSubwords(rows[i].subwords, scheme);
        r.label = labeller.LabelWord(r.word, r.subwords);
      } catch (const std::exception& e) {
        failed_at[t] = i;
        failure[t] = e.what();
        return;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  // Workers own increasing index ranges, so the first failing worker holds
  // the first failing row.
  for (size_t t = 0; t < workers; ++t)
    if (failed_at[t] != SIZE_MAX)
      throw InputError("row " + std::to_string(failed_at[t]) + " ('" +
                       rows[failed_at[t]].word + "'): " + failure[t]);
  return out;
}

nlohmann::json LabelToJson(const LabelledWord& row) {
  nlohmann::json doc;
  doc["word"] = row.word;
  doc["subwords"] = row.subwords.tokens;
  doc["label"] = LabelName(row.label.value);
  doc["mu"] = row.label.mu ? nlohmann::json(*row.label.mu) : nlohmann::json();
  return doc;
}

std::string CanonicalJsonLine(const LabelledWord& row) {
  // nlohmann::json objects keep keys sorted, so dump() is canonical.
  return LabelToJson(row).dump();
}

std::string TsvLine(const LabelledWord& row) {
  return row.word + "\t" + JoinStrings(row.subwords.tokens, " ") + "\t" +
         std::string(LabelName(row.label.value)) + "\t" +
         (row.label.mu ? std::to_string(*row.label.mu) : std::string());
}

void WriteLabels(const std::string& path, const std::vector<LabelledWord>& rows,
                 RowFormat format) {
  std::string text;
  for (const auto& r : rows)
    text += (format == RowFormat::kTsv ? TsvLine(r) : CanonicalJsonLine(r)) + "\n";
  WriteFile(path, text);
}

std::vector<LabelledWord> ReadLabels(const std::string& path, RowFormat format) {
  std::vector<LabelledWord> out;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (TrimView(line).empty() || line[0] == '#') continue;
    LabelledWord row;
    try {
      if (format == RowFormat::kTsv) {
        auto cols = SplitString(line, '\t');
        if (cols.size() < 3) throw InputError("expected word, subwords, label");
        row.word = cols[0];
        row.subwords.tokens = SplitWhitespace(cols[1]);
        row.label.value = ParseLabel(cols[2]);
        if (cols.size() > 3 && !cols[3].empty()) row.label.mu = std::stoi(cols[3]);
      } else {
        const auto doc = nlohmann::json::parse(line);
        row.word = doc.at("word").get<std::string>();
        row.subwords.tokens = doc.at("subwords").get<std::vector<std::string>>();
        row.label.value = ParseLabel(doc.at("label").get<std::string>());
        if (doc.contains("mu") && !doc["mu"].is_null())
          row.label.mu = doc["mu"].get<int>();
      }
    } catch (const std::exception& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace morphtok
