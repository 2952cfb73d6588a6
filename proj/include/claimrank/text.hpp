// Copyright 2026 The ClaimRank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLAIMRANK_TEXT_HPP_
#define CLAIMRANK_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace claimrank {

// Decodes UTF-8; malformed sequences decode to U+FFFD one byte at a time.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);

// Number of Unicode scalar values in `text`.
std::size_t CharCount(std::string_view text);

// The tokenization shared by similarity filtering and bag-of-words features:
// Unicode-lowercase, split on whitespace, strip leading and trailing
// non-alphanumeric characters from each token, drop empty tokens.
std::vector<std::string> Tokenize(std::string_view text);

}  // namespace claimrank

#endif  // CLAIMRANK_TEXT_HPP_
