// Copyright 2026 The PGA Authors
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

#ifndef PGA_TOKENIZE_HPP
#define PGA_TOKENIZE_HPP

#include <string>
#include <vector>

namespace pga {

struct TokenSpan {
  std::string text;
  int char_start = 0;  // byte offsets into the original string
  int char_end = 0;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

// Whitespace tokenization with punctuation splitting: each whitespace-
// separated chunk has leading and trailing characters from the set
// . , ; : ! ? ( ) " '  peeled off as single-character tokens. Offsets are
// byte positions into `text`; multi-byte UTF-8 sequences never match the
// ASCII punctuation set and pass through intact.
std::vector<TokenSpan> tokenize_with_offsets(const std::string& text);

bool is_split_punct(char c);

}  // namespace pga

#endif  // PGA_TOKENIZE_HPP
