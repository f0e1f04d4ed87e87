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

#ifndef PGA_BRACKET_HPP
#define PGA_BRACKET_HPP

#include <string>

#include "pga/types.hpp"

namespace pga {

// Sentence text with each entity wrapped in flat square brackets, entity
// types omitted. The plain sentence is the tokens joined by single spaces;
// no detokenization is applied, so the rendering is exactly reversible.
// Throws Error(validation) when entity spans overlap (sample not
// bracketable).
std::string render_bracketed(const Sample& s);

}  // namespace pga

#endif  // PGA_BRACKET_HPP
