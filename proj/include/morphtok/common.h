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

#ifndef MORPHTOK_COMMON_H_
#define MORPHTOK_COMMON_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morphtok {

// Canonical word-initial marker carried by the first unit of a word.
inline constexpr std::string_view kWordMarker = "_";

// Raised for bad user input: unreadable files, malformed rows, flags that
// reference inconsistent data. The CLI maps it to exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an internal invariant does not hold. Exit status 2.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool HasMarker(std::string_view unit) {
  return unit.substr(0, kWordMarker.size()) == kWordMarker;
}

inline std::string StripMarker(std::string_view unit) {
  return std::string(HasMarker(unit) ? unit.substr(kWordMarker.size())
                                     : unit);
}

inline std::string AddMarker(std::string_view unit) {
  return HasMarker(unit) ? std::string(unit)
                         : std::string(kWordMarker) + std::string(unit);
}

std::vector<std::string> SplitString(std::string_view text, char delim);
std::vector<std::string> SplitWhitespace(std::string_view text);
std::string JoinStrings(const std::vector<std::string>& parts,
                        std::string_view sep);
std::string_view TrimView(std::string_view text);
std::string ToLower(std::string_view text);

// Reads every line of a UTF-8 text file, stripping "\r\n" endings.
// Throws InputError when the file cannot be opened.
std::vector<std::string> ReadLines(const std::string& path);
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

// Number of Unicode code points; invalid bytes count as one each.
size_t Utf8Length(std::string_view text);
// Splits into code points, keeping each as its UTF-8 byte sequence.
std::vector<std::string> Utf8Chars(std::string_view text);

// Levenshtein distance over code points.
size_t EditDistance(std::string_view a, std::string_view b);

}  // namespace morphtok

#endif  // MORPHTOK_COMMON_H_
