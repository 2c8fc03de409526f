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

#ifndef MORPHTOK_CHECKSUM_H_
#define MORPHTOK_CHECKSUM_H_

#include <string>
#include <string_view>

namespace morphtok {

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::string& path);

}  // namespace morphtok

#endif  // MORPHTOK_CHECKSUM_H_
