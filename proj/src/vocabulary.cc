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

#include "morphtok/vocabulary.h"

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "morphtok/common.h"

namespace morphtok {
namespace {

constexpr std::string_view kSentencePieceMark = "\xE2\x96\x81";  // U+2581
constexpr std::string_view kByteLevelMark = "\xC4\xA0";          // U+0120
constexpr std::string_view kContinuation = "##";

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

std::string_view MarkerSchemeName(MarkerScheme scheme) {
  switch (scheme) {
    case MarkerScheme::kSentencePiece:
      return "sentencepiece";
    case MarkerScheme::kByteLevel:
      return "byte-level";
    case MarkerScheme::kWordPiece:
      return "wordpiece";
    case MarkerScheme::kPlain:
      return "plain";
  }
  return "plain";
}

MarkerScheme ParseMarkerScheme(std::string_view name) {
  if (name == "sentencepiece" || name == "sentencepiece-underline")
    return MarkerScheme::kSentencePiece;
  if (name == "byte-level" || name == "byte-level-prefix")
    return MarkerScheme::kByteLevel;
  if (name == "wordpiece" || name == "wordpiece-continuation")
    return MarkerScheme::kWordPiece;
  if (name == "plain") return MarkerScheme::kPlain;
  throw InputError("unknown marker scheme: " + std::string(name));
}

std::string SubwordSequence::Surface() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i)
    out += i == 0 ? StripMarker(tokens[i]) : tokens[i];
  return out;
}

SubwordSequence NormalizeSubwords(const std::vector<std::string>& raw,
                                  MarkerScheme scheme) {
  std::vector<std::string> pieces = raw;
  std::string_view mark;
  if (scheme == MarkerScheme::kSentencePiece) mark = kSentencePieceMark;
  if (scheme == MarkerScheme::kByteLevel) mark = kByteLevelMark;
  if (scheme == MarkerScheme::kPlain) mark = kWordMarker;
  // A lone marker piece ("▁" "jog" "ging") belongs to the next piece.
  if (!mark.empty() && pieces.size() > 1 && pieces.front() == mark)
    pieces.erase(pieces.begin());
  if (pieces.empty()) throw InputError("empty subword sequence");

  SubwordSequence seq;
  for (size_t i = 0; i < pieces.size(); ++i) {
    std::string_view p = pieces[i];
    std::string body;
    if (scheme == MarkerScheme::kWordPiece) {
      if (i == 0) {
        if (StartsWith(p, kContinuation))
          throw InputError("first wordpiece carries a continuation marker: " +
                           std::string(p));
        body = std::string(p);
      } else {
        if (!StartsWith(p, kContinuation))
          throw InputError("wordpiece without continuation marker inside word: " +
                           std::string(p));
        body = std::string(p.substr(kContinuation.size()));
      }
    } else {
      if (StartsWith(p, mark)) {
        if (i > 0)
          throw InputError("word-initial marker inside word: " + std::string(p));
        p.remove_prefix(mark.size());
      }
      body = std::string(p);
    }
    if (body.empty()) throw InputError("empty subword piece");
    seq.tokens.push_back(i == 0 ? AddMarker(body) : body);
  }
  return seq;
}

void CheckReassembly(const SubwordSequence& seq, std::string_view word) {
  if (seq.tokens.empty()) throw InputError("empty subword sequence");
  if (!HasMarker(seq.tokens.front()))
    throw InputError("first subword lacks the word-initial marker");
  const std::string surface = seq.Surface();
  if (surface == word) return;
  if (ToLower(surface) == ToLower(word)) return;
  throw InputError("subwords '" + JoinStrings(seq.tokens, " ") +
                   "' do not reassemble '" + std::string(word) + "'");
}

std::string NormalizeVocabToken(std::string_view token, MarkerScheme scheme) {
  switch (scheme) {
    case MarkerScheme::kSentencePiece:
      if (StartsWith(token, kSentencePieceMark))
        return std::string(kWordMarker) +
               std::string(token.substr(kSentencePieceMark.size()));
      return std::string(token);
    case MarkerScheme::kByteLevel:
      if (StartsWith(token, kByteLevelMark))
        return std::string(kWordMarker) +
               std::string(token.substr(kByteLevelMark.size()));
      return std::string(token);
    case MarkerScheme::kWordPiece:
      if (StartsWith(token, kContinuation))
        return std::string(token.substr(kContinuation.size()));
      return std::string(kWordMarker) + std::string(token);
    case MarkerScheme::kPlain:
      return std::string(token);
  }
  return std::string(token);
}

Vocabulary::Vocabulary(const std::vector<std::string>& tokens) {
  for (const auto& t : tokens) tokens_.insert(t);
}

bool Vocabulary::Insert(std::string token) {
  return tokens_.insert(std::move(token)).second;
}

VocabFormat ParseVocabFormat(std::string_view name) {
  if (name == "token-per-line" || name == "txt") return VocabFormat::kTokenPerLine;
  if (name == "tokenizer-json" || name == "json")
    return VocabFormat::kTokenizerJson;
  throw InputError("unknown vocabulary format: " + std::string(name));
}

Vocabulary LoadVocab(const std::string& path, VocabFormat format,
                     MarkerScheme scheme) {
  std::vector<std::string> raw;
  if (format == VocabFormat::kTokenPerLine) {
    for (auto& line : ReadLines(path)) {
      std::string token = line.substr(0, line.find('\t'));
      if (token.empty()) continue;
      raw.push_back(std::move(token));
    }
  } else {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(ReadFile(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("cannot parse tokenizer json " + path + ": " + e.what());
    }
    const nlohmann::json* vocab = nullptr;
    if (doc.contains("model") && doc["model"].contains("vocab"))
      vocab = &doc["model"]["vocab"];
    else if (doc.contains("vocab"))
      vocab = &doc["vocab"];
    if (vocab == nullptr) throw InputError("no vocab found in " + path);
    if (vocab->is_object()) {
      for (const auto& [token, _] : vocab->items()) raw.push_back(token);
    } else if (vocab->is_array()) {
      for (const auto& entry : *vocab) {
        if (entry.is_array() && !entry.empty() && entry[0].is_string())
          raw.push_back(entry[0].get<std::string>());
        else if (entry.is_string())
          raw.push_back(entry.get<std::string>());
        else
          throw InputError("unrecognized vocab entry in " + path);
      }
    } else {
      throw InputError("unrecognized vocab layout in " + path);
    }
  }
  Vocabulary vocab;
  size_t duplicates = 0;
  for (const auto& t : raw)
    if (!vocab.Insert(NormalizeVocabToken(t, scheme))) ++duplicates;
  if (vocab.empty()) throw InputError("empty vocabulary: " + path);
  if (duplicates > 0)
    spdlog::warn("{}: {} duplicate tokens collapsed after normalization", path,
                 duplicates);
  return vocab;
}

}  // namespace morphtok
