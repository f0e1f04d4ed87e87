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

#ifndef PGA_TYPES_HPP
#define PGA_TYPES_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pga {

// Error taxonomy shared by the core, the C API and the CLI. The class name
// is the machine-parsable token printed on failure.
enum class ErrorClass {
  io,
  parse,
  validation,
  config,
  transport,
  cache_miss,
  unsupported,
  internal,
};

const char* error_class_name(ErrorClass c);

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& message)
      : std::runtime_error(message), cls_(cls) {}
  ErrorClass cls() const { return cls_; }

 private:
  ErrorClass cls_;
};

// The six admissible entity type labels.
enum class EntityType {
  Task,
  Method,
  Metric,
  Material,
  Generic,
  OtherScientificTerm,
};
inline constexpr int kEntityTypeCount = 6;

// The seven admissible relation type labels.
enum class RelationType {
  UsedFor,
  FeatureOf,
  HyponymOf,
  PartOf,
  EvaluateFor,
  Compare,
  Conjunction,
};
inline constexpr int kRelationTypeCount = 7;

const std::string& entity_type_name(EntityType t);
const std::string& relation_type_name(RelationType t);
// Throws Error(parse) on an unknown label.
EntityType entity_type_from_name(const std::string& name);
RelationType relation_type_from_name(const std::string& name);
// Compare and Conjunction connect their endpoints symmetrically.
bool relation_type_symmetric(RelationType t);

// Token span with half-open bounds [start, end) plus the cached surface
// text (covered tokens joined by single spaces).
struct EntityMention {
  int start = 0;
  int end = 0;
  EntityType type = EntityType::Task;
  std::string surface;

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

// Indices into the owning sample's entity list.
struct RelationMention {
  int subject = 0;
  int object = 0;
  RelationType type = RelationType::UsedFor;

  friend bool operator==(const RelationMention&, const RelationMention&) = default;
};

enum class AugmentMethod { paraphrase, generate };
const std::string& augment_method_name(AugmentMethod m);
AugmentMethod augment_method_from_name(const std::string& name);

// Provenance attached to a synthesized sample.
struct PseudoMeta {
  AugmentMethod method = AugmentMethod::paraphrase;
  std::string origin_id;
  int attempts = 1;

  friend bool operator==(const PseudoMeta&, const PseudoMeta&) = default;
};

// One sentence with its typed entity spans and typed relation pairs.
// Entities are kept sorted by (start, end, type); relations index into the
// entity list. A synthesized sample carries provenance in `pseudo`.
struct Sample {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<EntityMention> entities;
  std::vector<RelationMention> relations;
  std::optional<PseudoMeta> pseudo;

  // Tokens joined by single spaces.
  std::string sentence() const;
  // True when no two entity spans overlap (nested spans count as overlap).
  bool bracketable() const;
  // Throws Error(validation) when any invariant is broken; `where` is
  // prepended to the message for context.
  void validate(const std::string& where) const;

  friend bool operator==(const Sample&, const Sample&) = default;
};

// Equality on annotation content only, ignoring id and provenance.
bool same_content(const Sample& a, const Sample& b);

enum class Split { train, dev, test, pseudo };
const std::string& split_name(Split s);

struct Document {
  std::string doc_key;
  std::vector<Sample> sentences;
};

struct DocumentSet {
  Split split = Split::train;
  std::vector<Document> documents;
};

// A flat, ordered set of samples; what most pipeline stages exchange.
struct SampleSet {
  Split split = Split::train;
  std::vector<Sample> items;
};

struct DatasetStats {
  std::size_t sample_count = 0;
  std::size_t entity_count = 0;
  std::size_t relation_count = 0;
  std::size_t entity_type_count = 0;
  std::size_t relation_type_count = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

std::string join_tokens(const std::vector<std::string>& tokens, int start, int end);

}  // namespace pga

#endif  // PGA_TYPES_HPP
