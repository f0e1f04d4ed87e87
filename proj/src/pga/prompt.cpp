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

#include "pga/prompt.hpp"

#include <algorithm>

#include "pga/bracket.hpp"
#include "pga/util.hpp"

namespace pga::detail {
extern const char* const kParaphraseTemplate;
extern const char* const kGenerateTemplate;
}  // namespace pga::detail

namespace pga {

namespace {

constexpr const char* kSlot = "{{sample}}";

// A template must contain exactly one slot; a trailing newline from the
// resource file is dropped so the prompt ends where the template ends.
std::string normalize_template(std::string text, const std::string& name) {
  if (!text.empty() && text.back() == '\n') text.pop_back();
  auto first = text.find(kSlot);
  if (first == std::string::npos) {
    throw Error(ErrorClass::config, "template '" + name + "' lacks the {{sample}} slot");
  }
  if (text.find(kSlot, first + 1) != std::string::npos) {
    throw Error(ErrorClass::config, "template '" + name + "' has more than one {{sample}} slot");
  }
  return text;
}

std::string fill_slot(const std::string& tpl, const std::string& value) {
  auto pos = tpl.find(kSlot);
  std::string out = tpl;
  out.replace(pos, std::string(kSlot).size(), value);
  return out;
}

}  // namespace

PromptTemplates::PromptTemplates()
    : PromptTemplates(detail::kParaphraseTemplate, detail::kGenerateTemplate) {}

PromptTemplates::PromptTemplates(std::string paraphrase, std::string generate)
    : paraphrase_(normalize_template(std::move(paraphrase), "paraphrase")),
      generate_(normalize_template(std::move(generate), "generate")) {}

PromptTemplates PromptTemplates::from_directory(const std::string& dir) {
  return PromptTemplates(read_file(dir + "/paraphrase_prompt.txt"),
                         read_file(dir + "/generate_prompt.txt"));
}

GenerateInput make_generate_input(const Sample& s) {
  GenerateInput g;
  for (const auto& e : s.entities) g.entities.emplace_back(e.surface, e.type);
  for (const auto& r : s.relations) {
    g.relations.emplace_back(s.entities[r.subject].surface, r.type, s.entities[r.object].surface);
  }
  return g;
}

std::string render_generate_slot(const GenerateInput& g) {
  std::string out = "{'entities': [";
  for (std::size_t i = 0; i < g.entities.size(); ++i) {
    if (i > 0) out += ", ";
    out += "['" + g.entities[i].first + "', {'type': '" +
           entity_type_name(g.entities[i].second) + "'}]";
  }
  out += "], 'relations': [";
  for (std::size_t i = 0; i < g.relations.size(); ++i) {
    if (i > 0) out += ", ";
    const auto& [subj, type, obj] = g.relations[i];
    out += "['" + subj + "', '" + relation_type_name(type) + "', '" + obj + "']";
  }
  out += "]}";
  return out;
}

PromptText build_paraphrase_prompt(const Sample& s, const PromptTemplates& tpl) {
  PromptText p;
  p.kind = AugmentMethod::paraphrase;
  p.origin_sample_id = s.id;
  p.text = fill_slot(tpl.paraphrase(), render_bracketed(s));
  return p;
}

PromptText build_generate_prompt(const GenerateInput& g, const std::string& origin_id,
                                 const PromptTemplates& tpl) {
  for (const auto& [subj, type, obj] : g.relations) {
    for (const std::string* surface : {&subj, &obj}) {
      bool known = std::any_of(g.entities.begin(), g.entities.end(),
                               [&](const auto& e) { return e.first == *surface; });
      if (!known) {
        throw Error(ErrorClass::validation,
                    "relation references unknown surface '" + *surface + "'");
      }
    }
    (void)type;
  }
  PromptText p;
  p.kind = AugmentMethod::generate;
  p.origin_sample_id = origin_id;
  p.text = fill_slot(tpl.generate(), render_generate_slot(g));
  return p;
}

}  // namespace pga
