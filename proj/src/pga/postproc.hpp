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
// Post-processing of completions: bracket parsing, re-tokenization, span
// realignment against the origin labels, and defect classification.

#ifndef PGA_POSTPROC_HPP
#define PGA_POSTPROC_HPP

#include <string>
#include <variant>
#include <vector>

#include "pga/prompt.hpp"
#include "pga/types.hpp"
#include "pga/util.hpp"

namespace pga {

enum class DefectClass {
  unbalanced_brackets,
  nested_brackets,
  entity_set_mismatch,
  missing_entity,
  extra_entity,
  sentinel_output,
  empty_output,
};

const std::string& defect_class_name(DefectClass c);
DefectClass defect_class_from_name(const std::string& name);

struct Defect {
  DefectClass cls;
  std::string detail;
};

// Completion text with brackets removed; spans are byte ranges into
// plain_text, non-overlapping and in reading order.
struct ParsedCompletion {
  std::string plain_text;
  std::vector<std::pair<int, int>> bracketed_spans;
};

// Single left-to-right scan; surrounding whitespace and one pair of
// matching quotes are stripped first.
std::variant<ParsedCompletion, Defect> parse_bracketed(const std::string& text);

// Outcome of realigning one completion.
struct RealignResult {
  // Exactly one of the three states:
  //   sample   set -> a valid pseudo-sample
  //   defect   set -> completion rejected
  //   neither  set -> benign drop (sentinel answer to an empty input)
  std::optional<Sample> sample;
  std::optional<Defect> defect;

  bool produced() const { return sample.has_value(); }
  bool benign_drop() const { return !sample && !defect; }
};

// Carries the origin's labels onto the paraphrased sentence. The multiset
// of bracketed surfaces must equal the multiset of origin entity surfaces
// (whitespace-collapsed, case-sensitive); duplicate surfaces take types in
// reading order. Relations follow the entity mapping.
RealignResult realign_paraphrase(const ParsedCompletion& pc, const Sample& origin);

// Builds a sample from a generated sentence and the label information it
// was prompted with. The sentinel answer is a benign drop when g is empty
// and a sentinel_output defect otherwise; sentinel detection happens on the
// raw completion before parsing, via realign_generated_text below.
RealignResult realign_generated(const ParsedCompletion& pc, const GenerateInput& g);

// Convenience wrappers running parse + sentinel detection + realign.
RealignResult process_paraphrase_completion(const std::string& raw, const Sample& origin);
RealignResult process_generate_completion(const std::string& raw, const GenerateInput& g);

// One audit line per rejected completion.
struct DefectLogEntry {
  std::string origin_id;
  AugmentMethod method = AugmentMethod::paraphrase;
  DefectClass defect = DefectClass::empty_output;
  int attempt = 1;
  bool benign = false;
  std::string completion_digest;  // sha256 of the raw completion text
};

json defect_log_entry_to_json(const DefectLogEntry& e);

}  // namespace pga

#endif  // PGA_POSTPROC_HPP
