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
//
// Prompt construction. The two prompt families are fixed text templates
// with a single "{{sample}}" slot; everything outside the slot is constant
// across samples. Templates ship embedded in the library and can be
// overridden from a directory holding paraphrase_prompt.txt and
// generate_prompt.txt with the same slot syntax.

#ifndef PGA_PROMPT_HPP
#define PGA_PROMPT_HPP

#include <string>
#include <utility>
#include <vector>

#include "pga/types.hpp"

namespace pga {

// Fixed answer for a generate input with no label information.
inline const char* kSentinelOutput = "No result can be generated with the given information.";

struct PromptText {
  std::string text;
  AugmentMethod kind = AugmentMethod::paraphrase;
  std::string origin_sample_id;
};

// Label information handed to the generate prompt: typed entity surfaces
// plus (subject surface, relation, object surface) triples.
struct GenerateInput {
  std::vector<std::pair<std::string, EntityType>> entities;
  std::vector<std::tuple<std::string, RelationType, std::string>> relations;

  bool empty() const { return entities.empty() && relations.empty(); }
};

class PromptTemplates {
 public:
  // Embedded copies of the resource files.
  PromptTemplates();
  // Loads <dir>/paraphrase_prompt.txt and <dir>/generate_prompt.txt.
  static PromptTemplates from_directory(const std::string& dir);

  const std::string& paraphrase() const { return paraphrase_; }
  const std::string& generate() const { return generate_; }

 private:
  PromptTemplates(std::string paraphrase, std::string generate);
  std::string paraphrase_;
  std::string generate_;
};

// Extracts the label information of a sample. Relation endpoints are
// referenced by surface; duplicate surfaces keep their per-entity order.
GenerateInput make_generate_input(const Sample& s);

// The {'entities': ..., 'relations': ...} notation used in the generate
// prompt's demonstrations.
std::string render_generate_slot(const GenerateInput& g);

// Throws Error(validation) for unbracketable samples.
PromptText build_paraphrase_prompt(const Sample& s, const PromptTemplates& tpl);
// Throws Error(validation) when a relation endpoint surface is missing from
// the entity list. An empty input is allowed.
PromptText build_generate_prompt(const GenerateInput& g, const std::string& origin_id,
                                 const PromptTemplates& tpl);

}  // namespace pga

#endif  // PGA_PROMPT_HPP
