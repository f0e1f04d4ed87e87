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

#include "pga/score.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "pga/util.hpp"

namespace pga {

namespace {

using EntKey = std::tuple<int, int, EntityType>;
using RelKey = std::tuple<int, int, int, int, RelationType>;
using TypePair = std::pair<EntityType, EntityType>;

// Symmetric types compare equal under endpoint swap; canonicalize by span
// order so set intersection implements the swap rule. Entity types travel
// with their span.
struct CanonicalRelation {
  RelKey key;
  std::optional<TypePair> types;
};

CanonicalRelation canonicalize(int ss, int se, int os, int oe, RelationType type,
                               std::optional<TypePair> types, bool symmetric_swap) {
  if (symmetric_swap && relation_type_symmetric(type)) {
    // Types join the comparison so endpoint pairs on identical spans still
    // canonicalize; the span part of the key is unaffected.
    const int st = types ? static_cast<int>(types->first) : 0;
    const int ot = types ? static_cast<int>(types->second) : 0;
    if (std::tie(os, oe, ot) < std::tie(ss, se, st)) {
      std::swap(ss, os);
      std::swap(se, oe);
      if (types) std::swap(types->first, types->second);
    }
  }
  return {{ss, se, os, oe, type}, types};
}

void check_span(int start, int end, int len, const std::string& id) {
  if (start < 0 || start >= end || end > len) {
    throw Error(ErrorClass::validation, "prediction span [" + std::to_string(start) + "," +
                                            std::to_string(end) + ") out of bounds for sample '" +
                                            id + "' with " + std::to_string(len) + " tokens");
  }
}

}  // namespace

PredictionSet load_predictions(const std::string& path) {
  PredictionSet out;
  for_each_json_line(path, [&](const json& rec, int lineno) {
    const std::string where = path + ":" + std::to_string(lineno);
    try {
      const std::string id = rec.at("id").get<std::string>();
      SamplePrediction& p = out[id];  // repeated lines for one id merge
      if (rec.contains("entities")) {
        for (const auto& ent : rec.at("entities")) {
          EntityMention m;
          m.start = ent.at(0).get<int>();
          m.end = ent.at(1).get<int>();
          m.type = entity_type_from_name(ent.at(2).get<std::string>());
          p.entities.push_back(std::move(m));
        }
      }
      if (rec.contains("relations")) {
        for (const auto& rel : rec.at("relations")) {
          PredictedRelation r;
          r.subj_start = rel.at("subject").at(0).get<int>();
          r.subj_end = rel.at("subject").at(1).get<int>();
          r.obj_start = rel.at("object").at(0).get<int>();
          r.obj_end = rel.at("object").at(1).get<int>();
          r.type = relation_type_from_name(rel.at("type").get<std::string>());
          if (rel.contains("subject_type")) {
            r.subject_type = entity_type_from_name(rel.at("subject_type").get<std::string>());
          }
          if (rel.contains("object_type")) {
            r.object_type = entity_type_from_name(rel.at("object_type").get<std::string>());
          }
          p.relations.push_back(std::move(r));
        }
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorClass::parse, where + ": malformed prediction: " + e.what());
    }
  });
  return out;
}

void RegimeScore::finalize() {
  precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  f1 = precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}

json ScoreReport::to_json() const {
  auto regime = [](const RegimeScore& r) {
    json j;
    j["tp"] = r.tp;
    j["fp"] = r.fp;
    j["fn"] = r.fn;
    j["precision"] = r.precision;
    j["recall"] = r.recall;
    j["f1"] = r.f1;
    return j;
  };
  json j;
  j["ent"] = regime(ent);
  j["rel"] = regime(rel);
  j["rel_plus"] = regime(rel_plus);
  return j;
}

std::string ScoreReport::table() const {
  std::ostringstream out;
  out << "regime  precision  recall     f1         tp/fp/fn\n";
  auto row = [&](const char* name, const RegimeScore& r) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-7s %-10.4f %-10.4f %-10.4f %zu/%zu/%zu", name, r.precision,
                  r.recall, r.f1, r.tp, r.fp, r.fn);
    out << buf << '\n';
  };
  row("Ent", ent);
  row("Rel", rel);
  row("Rel+", rel_plus);
  return out.str();
}

ScoreReport score(const std::vector<Sample>& gold, const PredictionSet& pred,
                  const ScoreOptions& options) {
  std::map<std::string, const Sample*> by_id;
  for (const auto& s : gold) by_id[s.id] = &s;
  for (const auto& [id, p] : pred) {
    if (!by_id.count(id)) {
      throw Error(ErrorClass::validation, "prediction references unknown sample id '" + id + "'");
    }
    (void)p;
  }

  ScoreReport report;
  static const SamplePrediction kEmpty;
  for (const auto& s : gold) {
    auto it = pred.find(s.id);
    const SamplePrediction& p = it == pred.end() ? kEmpty : it->second;
    const int len = static_cast<int>(s.tokens.size());

    // Entities: exact (span, type), duplicates counted once.
    std::set<EntKey> gold_ents;
    for (const auto& e : s.entities) gold_ents.insert({e.start, e.end, e.type});
    std::set<EntKey> pred_ents;
    for (const auto& e : p.entities) {
      check_span(e.start, e.end, len, s.id);
      pred_ents.insert({e.start, e.end, e.type});
    }
    for (const auto& k : pred_ents) report.ent.tp += gold_ents.count(k);
    report.ent.fp += pred_ents.size();
    report.ent.fn += gold_ents.size();

    // Relations, canonicalized. The typed view keeps every (relation key,
    // endpoint types) combination seen.
    std::set<RelKey> gold_rels;
    std::set<std::pair<RelKey, TypePair>> gold_typed;
    for (const auto& r : s.relations) {
      const auto& sub = s.entities[r.subject];
      const auto& obj = s.entities[r.object];
      auto c = canonicalize(sub.start, sub.end, obj.start, obj.end, r.type,
                            TypePair{sub.type, obj.type}, options.symmetric_swap);
      gold_rels.insert(c.key);
      gold_typed.insert({c.key, *c.types});
    }
    std::set<RelKey> pred_rels;
    std::set<std::pair<RelKey, TypePair>> pred_typed;
    for (const auto& r : p.relations) {
      check_span(r.subj_start, r.subj_end, len, s.id);
      check_span(r.obj_start, r.obj_end, len, s.id);
      // Endpoint types: explicit fields win; otherwise the unique predicted
      // entity with the same span. Zero or several candidates leave the
      // relation untyped and it cannot score under Rel+.
      auto lookup = [&](int start, int end) -> std::optional<EntityType> {
        std::set<EntityType> found;
        for (const auto& e : p.entities) {
          if (e.start == start && e.end == end) found.insert(e.type);
        }
        if (found.size() == 1) return *found.begin();
        return std::nullopt;
      };
      auto st = r.subject_type ? r.subject_type : lookup(r.subj_start, r.subj_end);
      auto ot = r.object_type ? r.object_type : lookup(r.obj_start, r.obj_end);
      std::optional<TypePair> types;
      if (st && ot) types = TypePair{*st, *ot};
      auto c = canonicalize(r.subj_start, r.subj_end, r.obj_start, r.obj_end, r.type, types,
                            options.symmetric_swap);
      pred_rels.insert(c.key);
      if (c.types) pred_typed.insert({c.key, *c.types});
    }

    for (const auto& k : pred_rels) {
      if (!gold_rels.count(k)) continue;
      ++report.rel.tp;
      // Rel+ refines a Rel match: some common typing of the same relation.
      bool typed_match = false;
      for (auto it2 = gold_typed.lower_bound({k, TypePair{}});
           it2 != gold_typed.end() && it2->first == k; ++it2) {
        if (pred_typed.count(*it2)) {
          typed_match = true;
          break;
        }
      }
      if (typed_match) ++report.rel_plus.tp;
    }
    report.rel.fp += pred_rels.size();
    report.rel.fn += gold_rels.size();
    report.rel_plus.fp += pred_rels.size();
    report.rel_plus.fn += gold_rels.size();
  }

  // fp/fn were accumulated as totals; subtract the matches.
  report.ent.fp -= report.ent.tp;
  report.ent.fn -= report.ent.tp;
  report.rel.fp -= report.rel.tp;
  report.rel.fn -= report.rel.tp;
  report.rel_plus.fp -= report.rel_plus.tp;
  report.rel_plus.fn -= report.rel_plus.tp;
  report.ent.finalize();
  report.rel.finalize();
  report.rel_plus.finalize();
  return report;
}

}  // namespace pga
