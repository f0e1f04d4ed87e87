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

#include "pga/types.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace pga {

const char* error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::io: return "io_error";
    case ErrorClass::parse: return "parse_error";
    case ErrorClass::validation: return "validation_error";
    case ErrorClass::config: return "config_error";
    case ErrorClass::transport: return "transport_error";
    case ErrorClass::cache_miss: return "cache_miss";
    case ErrorClass::unsupported: return "unsupported";
    case ErrorClass::internal: return "internal_error";
  }
  return "internal_error";
}

namespace {

const std::array<std::string, kEntityTypeCount> kEntityNames = {
    "Task", "Method", "Metric", "Material", "Generic", "OtherScientificTerm"};

const std::array<std::string, kRelationTypeCount> kRelationNames = {
    "Used-for", "Feature-of", "Hyponym-of", "Part-of",
    "Evaluate-for", "Compare", "Conjunction"};

const std::array<std::string, 2> kMethodNames = {"paraphrase", "generate"};

}  // namespace

const std::string& entity_type_name(EntityType t) {
  return kEntityNames[static_cast<int>(t)];
}

const std::string& relation_type_name(RelationType t) {
  return kRelationNames[static_cast<int>(t)];
}

EntityType entity_type_from_name(const std::string& name) {
  for (int i = 0; i < kEntityTypeCount; ++i) {
    if (kEntityNames[i] == name) return static_cast<EntityType>(i);
  }
  throw Error(ErrorClass::parse, "unknown entity type '" + name + "'");
}

RelationType relation_type_from_name(const std::string& name) {
  for (int i = 0; i < kRelationTypeCount; ++i) {
    if (kRelationNames[i] == name) return static_cast<RelationType>(i);
  }
  throw Error(ErrorClass::parse, "unknown relation type '" + name + "'");
}

bool relation_type_symmetric(RelationType t) {
  return t == RelationType::Compare || t == RelationType::Conjunction;
}

const std::string& augment_method_name(AugmentMethod m) {
  return kMethodNames[static_cast<int>(m)];
}

AugmentMethod augment_method_from_name(const std::string& name) {
  if (name == "paraphrase") return AugmentMethod::paraphrase;
  if (name == "generate") return AugmentMethod::generate;
  throw Error(ErrorClass::config, "unknown method '" + name + "'");
}

const std::string& split_name(Split s) {
  static const std::array<std::string, 4> names = {"train", "dev", "test", "pseudo"};
  return names[static_cast<int>(s)];
}

std::string join_tokens(const std::vector<std::string>& tokens, int start, int end) {
  std::string out;
  for (int i = start; i < end; ++i) {
    if (i > start) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string Sample::sentence() const {
  return join_tokens(tokens, 0, static_cast<int>(tokens.size()));
}

bool Sample::bracketable() const {
  // Entities are sorted by (start, end); a span overlaps its predecessor
  // iff it starts before the running maximum end.
  int max_end = -1;
  for (const auto& e : entities) {
    if (e.start < max_end) return false;
    max_end = std::max(max_end, e.end);
  }
  return true;
}

void Sample::validate(const std::string& where) const {
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorClass::validation, where + ": " + msg);
  };
  const int n = static_cast<int>(tokens.size());
  for (const auto& t : tokens) {
    if (t.empty()) fail("empty token");
  }
  const EntityMention* prev = nullptr;
  std::set<std::tuple<int, int, EntityType>> seen;
  for (const auto& e : entities) {
    if (!(0 <= e.start && e.start < e.end && e.end <= n)) {
      fail("entity span [" + std::to_string(e.start) + "," + std::to_string(e.end) +
           ") out of range for " + std::to_string(n) + " tokens");
    }
    if (e.surface != join_tokens(tokens, e.start, e.end)) {
      fail("entity surface '" + e.surface + "' does not match covered tokens");
    }
    if (prev && std::tie(prev->start, prev->end) > std::tie(e.start, e.end)) {
      fail("entity list not ordered by (start, end)");
    }
    if (!seen.insert({e.start, e.end, e.type}).second) {
      fail("duplicate entity (start, end, type)");
    }
    prev = &e;
  }
  const int ne = static_cast<int>(entities.size());
  for (const auto& r : relations) {
    if (r.subject < 0 || r.subject >= ne || r.object < 0 || r.object >= ne) {
      fail("relation endpoint index out of range");
    }
    if (r.subject == r.object) fail("relation subject equals object");
  }
}

bool same_content(const Sample& a, const Sample& b) {
  return a.tokens == b.tokens && a.entities == b.entities && a.relations == b.relations;
}

}  // namespace pga
