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
// Micro-averaged scoring of prediction files under three regimes:
//   Ent   (sample, span, entity type) exact
//   Rel   (sample, subject span, object span, relation type) exact
//   Rel+  Rel plus correctly typed subject and object entities
//
// Symmetric relation types (Compare, Conjunction) also match with their
// endpoints swapped; the swap rule is configurable and on by default.
//
// Prediction file: one JSON object per line,
//   {"id": str,
//    "entities": [[start, end, type], ...],
//    "relations": [{"subject": [s, e], "object": [s, e], "type": str,
//                   "subject_type"?: str, "object_type"?: str}, ...]}
// Token offsets are sentence-level with exclusive ends. When a relation
// omits subject_type/object_type, the types are looked up among the
// predicted entities with the same span.

#ifndef PGA_SCORE_HPP
#define PGA_SCORE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pga/types.hpp"
#include "pga/util.hpp"

namespace pga {

struct PredictedRelation {
  int subj_start = 0, subj_end = 0;
  int obj_start = 0, obj_end = 0;
  RelationType type = RelationType::UsedFor;
  std::optional<EntityType> subject_type;
  std::optional<EntityType> object_type;
};

struct SamplePrediction {
  std::vector<EntityMention> entities;  // surface left empty
  std::vector<PredictedRelation> relations;
};

// Keyed by sample id.
using PredictionSet = std::map<std::string, SamplePrediction>;

PredictionSet load_predictions(const std::string& path);

struct RegimeScore {
  std::size_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;

  void finalize();
};

struct ScoreReport {
  RegimeScore ent;
  RegimeScore rel;
  RegimeScore rel_plus;

  json to_json() const;
  std::string table() const;
};

struct ScoreOptions {
  bool symmetric_swap = true;
};

// Throws Error(validation) when a prediction references an unknown sample
// id or a span outside the sample's token range.
ScoreReport score(const std::vector<Sample>& gold, const PredictionSet& pred,
                  const ScoreOptions& options = {});

}  // namespace pga

#endif  // PGA_SCORE_HPP
