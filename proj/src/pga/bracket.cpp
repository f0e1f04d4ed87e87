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

#include "pga/bracket.hpp"

namespace pga {

std::string render_bracketed(const Sample& s) {
  if (!s.bracketable()) {
    throw Error(ErrorClass::validation,
                "sample '" + s.id + "' has overlapping entity spans and cannot be bracketed");
  }
  // Entities are sorted and non-overlapping, so a single pass suffices.
  std::string out;
  std::size_t next = 0;
  for (int i = 0; i < static_cast<int>(s.tokens.size()); ++i) {
    if (i > 0) out += ' ';
    if (next < s.entities.size() && s.entities[next].start == i) out += '[';
    out += s.tokens[i];
    if (next < s.entities.size() && s.entities[next].end == i + 1) {
      out += ']';
      ++next;
    }
  }
  return out;
}

}  // namespace pga
