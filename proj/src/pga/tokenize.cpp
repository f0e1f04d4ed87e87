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

#include "pga/tokenize.hpp"

#include <cctype>

namespace pga {

bool is_split_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '"': case '\'':
      return true;
    default:
      return false;
  }
}

std::vector<TokenSpan> tokenize_with_offsets(const std::string& text) {
  std::vector<TokenSpan> out;
  const int n = static_cast<int>(text.size());
  int i = 0;
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    int j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    // Chunk [i, j): peel punctuation off both ends, one character per token.
    int b = i;
    int e = j;
    while (b < e && is_split_punct(text[b])) {
      out.push_back({std::string(1, text[b]), b, b + 1});
      ++b;
    }
    int tail_begin = e;
    while (tail_begin > b && is_split_punct(text[tail_begin - 1])) --tail_begin;
    if (b < tail_begin) {
      out.push_back({text.substr(b, tail_begin - b), b, tail_begin});
    }
    for (int k = tail_begin; k < e; ++k) {
      out.push_back({std::string(1, text[k]), k, k + 1});
    }
    i = j;
  }
  return out;
}

}  // namespace pga
