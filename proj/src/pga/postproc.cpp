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

#include "pga/postproc.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "pga/tokenize.hpp"
#include "pga/util.hpp"

namespace pga {

namespace {

const std::array<std::string, 7> kDefectNames = {
    "unbalanced_brackets", "nested_brackets", "entity_set_mismatch", "missing_entity",
    "extra_entity",        "sentinel_output", "empty_output"};

// Leading/trailing whitespace plus one pair of matching quotes, as in the
// completion style where the whole sentence is wrapped in single quotes.
std::string strip_wrapping(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    s = trim(s.substr(1, s.size() - 2));
  }
  return s;
}

struct SurfaceTally {
  std::vector<std::string> missing;  // expected but not bracketed
  std::vector<std::string> extra;    // bracketed but not expected
};

SurfaceTally tally_surfaces(const std::vector<std::string>& expected,
                            const std::vector<std::string>& found) {
  std::map<std::string, int> counts;
  for (const auto& s : expected) ++counts[s];
  for (const auto& s : found) --counts[s];
  SurfaceTally t;
  for (const auto& [surface, n] : counts) {
    for (int i = 0; i < n; ++i) t.missing.push_back(surface);
    for (int i = 0; i < -n; ++i) t.extra.push_back(surface);
  }
  return t;
}

std::string list_surfaces(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += "'" + v[i] + "'";
  }
  return out;
}

std::optional<Defect> surface_defect(const SurfaceTally& t) {
  if (t.missing.empty() && t.extra.empty()) return std::nullopt;
  if (!t.missing.empty() && !t.extra.empty()) {
    return Defect{DefectClass::entity_set_mismatch,
                  "missing " + list_surfaces(t.missing) + "; extra " + list_surfaces(t.extra)};
  }
  if (!t.missing.empty()) {
    return Defect{DefectClass::missing_entity, "missing " + list_surfaces(t.missing)};
  }
  return Defect{DefectClass::extra_entity, "extra " + list_surfaces(t.extra)};
}

struct AlignedEntity {
  int token_start;
  int token_end;
  std::string surface;  // covered tokens joined by single spaces
};

// Spans that do not land on token boundaries cannot carry labels.
std::variant<std::vector<AlignedEntity>, Defect> align_spans(
    const ParsedCompletion& pc, const std::vector<TokenSpan>& tokens) {
  std::vector<AlignedEntity> out;
  for (const auto& [cs, ce] : pc.bracketed_spans) {
    int first = -1;
    int last = -1;
    for (int t = 0; t < static_cast<int>(tokens.size()); ++t) {
      if (tokens[t].char_end > cs && tokens[t].char_start < ce) {
        if (first < 0) first = t;
        last = t;
      }
    }
    if (first < 0) {
      return Defect{DefectClass::entity_set_mismatch,
                    "bracketed span covers no token: '" + pc.plain_text.substr(cs, ce - cs) + "'"};
    }
    std::string joined;
    for (int t = first; t <= last; ++t) {
      if (t > first) joined += ' ';
      joined += tokens[t].text;
    }
    if (joined != collapse_whitespace(pc.plain_text.substr(cs, ce - cs))) {
      return Defect{DefectClass::entity_set_mismatch,
                    "bracket does not align with token boundaries around '" + joined + "'"};
    }
    out.push_back({first, last + 1, std::move(joined)});
  }
  return out;
}

Sample build_pseudo(const std::vector<TokenSpan>& tokens,
                    const std::vector<AlignedEntity>& aligned,
                    const std::vector<EntityType>& types) {
  Sample s;
  for (const auto& t : tokens) s.tokens.push_back(t.text);
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    EntityMention m;
    m.start = aligned[i].token_start;
    m.end = aligned[i].token_end;
    m.type = types[i];
    m.surface = aligned[i].surface;
    s.entities.push_back(std::move(m));
  }
  return s;
}

}  // namespace

const std::string& defect_class_name(DefectClass c) {
  return kDefectNames[static_cast<int>(c)];
}

DefectClass defect_class_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kDefectNames.size(); ++i) {
    if (kDefectNames[i] == name) return static_cast<DefectClass>(i);
  }
  throw Error(ErrorClass::parse, "unknown defect class '" + name + "'");
}

std::variant<ParsedCompletion, Defect> parse_bracketed(const std::string& text) {
  const std::string s = strip_wrapping(text);
  if (s.empty()) return Defect{DefectClass::empty_output, "completion is empty"};
  ParsedCompletion pc;
  int open_at = -1;
  for (char c : s) {
    if (c == '[') {
      if (open_at >= 0) return Defect{DefectClass::nested_brackets, "'[' inside an open bracket"};
      open_at = static_cast<int>(pc.plain_text.size());
    } else if (c == ']') {
      if (open_at < 0) return Defect{DefectClass::unbalanced_brackets, "']' without matching '['"};
      pc.bracketed_spans.emplace_back(open_at, static_cast<int>(pc.plain_text.size()));
      open_at = -1;
    } else {
      pc.plain_text += c;
    }
  }
  if (open_at >= 0) return Defect{DefectClass::unbalanced_brackets, "'[' never closed"};
  return pc;
}

RealignResult realign_paraphrase(const ParsedCompletion& pc, const Sample& origin) {
  RealignResult res;
  std::vector<std::string> expected;
  for (const auto& e : origin.entities) expected.push_back(collapse_whitespace(e.surface));
  std::vector<std::string> found;
  for (const auto& [cs, ce] : pc.bracketed_spans) {
    found.push_back(collapse_whitespace(pc.plain_text.substr(cs, ce - cs)));
  }
  if (auto defect = surface_defect(tally_surfaces(expected, found))) {
    res.defect = *defect;
    return res;
  }

  const auto tokens = tokenize_with_offsets(pc.plain_text);
  auto aligned = align_spans(pc, tokens);
  if (std::holds_alternative<Defect>(aligned)) {
    res.defect = std::get<Defect>(aligned);
    return res;
  }
  const auto& spans = std::get<std::vector<AlignedEntity>>(aligned);

  // Duplicate surfaces take origin entities in reading order.
  std::vector<bool> used(origin.entities.size(), false);
  std::vector<int> origin_of(spans.size(), -1);      // span index -> origin entity index
  std::vector<int> new_index(origin.entities.size(), -1);
  std::vector<EntityType> types;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::string key = collapse_whitespace(spans[i].surface);
    for (std::size_t j = 0; j < origin.entities.size(); ++j) {
      if (!used[j] && expected[j] == key) {
        used[j] = true;
        origin_of[i] = static_cast<int>(j);
        new_index[j] = static_cast<int>(i);
        break;
      }
    }
    if (origin_of[i] < 0) {
      // The multiset check above makes this unreachable unless token
      // alignment changed a surface; classify like any surface change.
      res.defect = Defect{DefectClass::entity_set_mismatch,
                          "surface '" + key + "' lost during token alignment"};
      return res;
    }
    types.push_back(origin.entities[origin_of[i]].type);
  }

  Sample out = build_pseudo(tokens, spans, types);
  for (const auto& r : origin.relations) {
    out.relations.push_back({new_index[r.subject], new_index[r.object], r.type});
  }
  out.validate("realigned paraphrase of '" + origin.id + "'");
  res.sample = std::move(out);
  return res;
}

RealignResult realign_generated(const ParsedCompletion& pc, const GenerateInput& g) {
  RealignResult res;
  std::vector<std::string> expected;
  for (const auto& [surface, type] : g.entities) expected.push_back(collapse_whitespace(surface));
  std::vector<std::string> found;
  for (const auto& [cs, ce] : pc.bracketed_spans) {
    found.push_back(collapse_whitespace(pc.plain_text.substr(cs, ce - cs)));
  }
  if (auto defect = surface_defect(tally_surfaces(expected, found))) {
    res.defect = *defect;
    return res;
  }

  const auto tokens = tokenize_with_offsets(pc.plain_text);
  auto aligned = align_spans(pc, tokens);
  if (std::holds_alternative<Defect>(aligned)) {
    res.defect = std::get<Defect>(aligned);
    return res;
  }
  const auto& spans = std::get<std::vector<AlignedEntity>>(aligned);

  std::vector<bool> used(g.entities.size(), false);
  std::vector<EntityType> types;
  for (const auto& span : spans) {
    const std::string key = collapse_whitespace(span.surface);
    int pick = -1;
    for (std::size_t j = 0; j < g.entities.size(); ++j) {
      if (!used[j] && expected[j] == key) {
        pick = static_cast<int>(j);
        break;
      }
    }
    if (pick < 0) {
      res.defect = Defect{DefectClass::entity_set_mismatch,
                          "surface '" + key + "' lost during token alignment"};
      return res;
    }
    used[pick] = true;
    types.push_back(g.entities[pick].second);
  }

  Sample out = build_pseudo(tokens, spans, types);

  // Relation endpoints are surfaces; bind each to the first bracketed
  // occurrence, and to distinct occurrences when both ends share a surface.
  auto find_span = [&](const std::string& surface, int exclude) {
    const std::string key = collapse_whitespace(surface);
    for (std::size_t i = 0; i < spans.size(); ++i) {
      if (static_cast<int>(i) != exclude && collapse_whitespace(spans[i].surface) == key) {
        return static_cast<int>(i);
      }
    }
    return -1;
  };
  for (const auto& [subj, type, obj] : g.relations) {
    int si = find_span(subj, -1);
    int oi = find_span(obj, si);
    if (si < 0 || oi < 0) {
      res.defect = Defect{DefectClass::entity_set_mismatch,
                          "relation endpoints could not be bound to distinct entities"};
      return res;
    }
    out.relations.push_back({si, oi, type});
  }
  out.validate("realigned generated sample");
  res.sample = std::move(out);
  return res;
}

RealignResult process_paraphrase_completion(const std::string& raw, const Sample& origin) {
  auto parsed = parse_bracketed(raw);
  if (std::holds_alternative<Defect>(parsed)) {
    RealignResult res;
    res.defect = std::get<Defect>(parsed);
    return res;
  }
  return realign_paraphrase(std::get<ParsedCompletion>(parsed), origin);
}

RealignResult process_generate_completion(const std::string& raw, const GenerateInput& g) {
  if (strip_wrapping(raw) == kSentinelOutput) {
    RealignResult res;
    if (!g.empty()) {
      res.defect = Defect{DefectClass::sentinel_output, "sentinel returned for a labeled input"};
    }
    return res;  // benign drop when g carries no labels
  }
  auto parsed = parse_bracketed(raw);
  if (std::holds_alternative<Defect>(parsed)) {
    RealignResult res;
    res.defect = std::get<Defect>(parsed);
    return res;
  }
  return realign_generated(std::get<ParsedCompletion>(parsed), g);
}

json defect_log_entry_to_json(const DefectLogEntry& e) {
  json rec;
  rec["origin_id"] = e.origin_id;
  rec["method"] = augment_method_name(e.method);
  rec["defect"] = defect_class_name(e.defect);
  rec["attempt"] = e.attempt;
  if (e.benign) rec["benign"] = true;
  rec["completion_digest"] = e.completion_digest;
  return rec;
}

}  // namespace pga
