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

#include <doctest.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "pga/util.hpp"
#include "support/oracle_score.hpp"

using namespace pga;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  static int counter = 0;
  auto dir = fs::temp_directory_path() / ("pga_score_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / (std::to_string(counter++) + "_" + name);
}

PredictionSet perfect_predictions(const std::vector<Sample>& gold) {
  PredictionSet out;
  for (const auto& s : gold) {
    SamplePrediction p;
    p.entities = s.entities;
    for (const auto& r : s.relations) {
      const auto& sub = s.entities[r.subject];
      const auto& obj = s.entities[r.object];
      PredictedRelation pr;
      pr.subj_start = sub.start;
      pr.subj_end = sub.end;
      pr.obj_start = obj.start;
      pr.obj_end = obj.end;
      pr.type = r.type;
      out[s.id].relations.push_back(pr);
    }
    out[s.id].entities = s.entities;
  }
  return out;
}

}  // namespace

TEST_CASE("perfect predictions score 1.0 everywhere") {
  auto gold = testing::random_scored_corpus(10, /*seed=*/5);
  auto report = score(gold, perfect_predictions(gold));
  for (const RegimeScore* r : {&report.ent, &report.rel, &report.rel_plus}) {
    CHECK(r->fp == 0);
    CHECK(r->fn == 0);
    CHECK(r->precision == doctest::Approx(1.0));
    CHECK(r->recall == doctest::Approx(1.0));
    CHECK(r->f1 == doctest::Approx(1.0));
  }
  CHECK(report.rel.tp > 0);
}

TEST_CASE("empty predictions score zero by convention") {
  auto gold = testing::random_scored_corpus(5, 6);
  auto report = score(gold, {});
  CHECK(report.ent.tp == 0);
  CHECK(report.ent.fp == 0);
  CHECK(report.ent.fn > 0);
  CHECK(report.ent.precision == 0.0);
  CHECK(report.ent.recall == 0.0);
  CHECK(report.ent.f1 == 0.0);
}

TEST_CASE("scorer equals the brute-force oracle on random instances") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    auto gold = testing::random_scored_corpus(50, rng());
    auto pred = testing::random_predictions(gold, rng());
    for (bool swap : {true, false}) {
      ScoreOptions options;
      options.symmetric_swap = swap;
      auto got = score(gold, pred, options);
      auto want = testing::oracle_score(gold, pred, swap);
      CHECK(got.ent.tp == want.ent_tp);
      CHECK(got.ent.fp == want.ent_fp);
      CHECK(got.ent.fn == want.ent_fn);
      CHECK(got.rel.tp == want.rel_tp);
      CHECK(got.rel.fp == want.rel_fp);
      CHECK(got.rel.fn == want.rel_fn);
      CHECK(got.rel_plus.tp == want.relp_tp);
      CHECK(got.rel_plus.fp == want.relp_fp);
      CHECK(got.rel_plus.fn == want.relp_fn);
    }
  }
}

TEST_CASE("adding predictions moves F1 the right way") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto gold = testing::random_scored_corpus(12, rng());
    auto pred = testing::random_predictions(gold, rng());
    auto base = score(gold, pred);

    // One correct entity prediction that was previously missing.
    PredictionSet more = pred;
    bool added_correct = false;
    for (const auto& s : gold) {
      for (const auto& e : s.entities) {
        auto& lst = more[s.id].entities;
        bool present = std::any_of(lst.begin(), lst.end(), [&](const EntityMention& x) {
          return x.start == e.start && x.end == e.end && x.type == e.type;
        });
        if (!present) {
          lst.push_back(e);
          added_correct = true;
          break;
        }
      }
      if (added_correct) break;
    }
    if (added_correct) {
      auto better = score(gold, more);
      CHECK(better.ent.f1 >= base.ent.f1 - 1e-12);
      CHECK(better.rel.f1 == doctest::Approx(base.rel.f1));
    }

    // One incorrect entity prediction (span outside any gold entity).
    PredictionSet worse_set = pred;
    const Sample& target = gold.front();
    EntityMention wrong;
    wrong.start = 0;
    wrong.end = static_cast<int>(target.tokens.size());
    wrong.type = EntityType::Metric;
    bool clash = false;
    for (const auto& e : target.entities) {
      if (e.start == wrong.start && e.end == wrong.end && e.type == wrong.type) clash = true;
    }
    auto& wl = worse_set[target.id].entities;
    bool already = std::any_of(wl.begin(), wl.end(), [&](const EntityMention& x) {
      return x.start == wrong.start && x.end == wrong.end && x.type == wrong.type;
    });
    if (!clash && !already) {
      wl.push_back(wrong);
      auto worse = score(gold, worse_set);
      CHECK(worse.ent.f1 <= base.ent.f1 + 1e-12);
    }
  }
}

TEST_CASE("Rel+ true positives never exceed Rel true positives") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto gold = testing::random_scored_corpus(8, rng());
    auto pred = testing::random_predictions(gold, rng());
    auto report = score(gold, pred);
    CHECK(report.rel_plus.tp <= report.rel.tp);
  }
}

TEST_CASE("report is invariant under sample and prediction order") {
  std::mt19937_64 rng(512);
  auto gold = testing::random_scored_corpus(20, rng());
  auto pred = testing::random_predictions(gold, rng());
  auto before = score(gold, pred).to_json();

  std::shuffle(gold.begin(), gold.end(), rng);
  PredictionSet shuffled;
  for (auto& [id, p] : pred) {
    SamplePrediction q = p;
    std::shuffle(q.entities.begin(), q.entities.end(), rng);
    std::shuffle(q.relations.begin(), q.relations.end(), rng);
    shuffled[id] = std::move(q);
  }
  CHECK(score(gold, shuffled).to_json() == before);
}

TEST_CASE("duplicate identical predictions count once") {
  auto gold = testing::random_scored_corpus(3, 21);
  auto pred = perfect_predictions(gold);
  PredictionSet doubled = pred;
  for (auto& [id, p] : doubled) {
    auto ents = p.entities;
    p.entities.insert(p.entities.end(), ents.begin(), ents.end());
    auto rels = p.relations;
    p.relations.insert(p.relations.end(), rels.begin(), rels.end());
  }
  CHECK(score(gold, doubled).to_json() == score(gold, pred).to_json());
}

TEST_CASE("symmetric relation types match under endpoint swap") {
  Sample s;
  s.id = "sym#0";
  s.tokens = {"a", "b", "c", "d"};
  s.entities = {{0, 1, EntityType::Method, "a"}, {2, 3, EntityType::Method, "c"}};
  s.relations = {{0, 1, RelationType::Compare}};
  s.validate("sym fixture");

  SamplePrediction p;
  p.entities = s.entities;
  PredictedRelation pr;
  pr.subj_start = 2;
  pr.subj_end = 3;  // swapped endpoints
  pr.obj_start = 0;
  pr.obj_end = 1;
  pr.type = RelationType::Compare;
  p.relations.push_back(pr);
  PredictionSet pred;
  pred["sym#0"] = p;

  auto swapped_on = score({s}, pred, {.symmetric_swap = true});
  CHECK(swapped_on.rel.tp == 1);
  CHECK(swapped_on.rel_plus.tp == 1);
  auto swapped_off = score({s}, pred, {.symmetric_swap = false});
  CHECK(swapped_off.rel.tp == 0);

  // Asymmetric types never swap.
  s.relations[0].type = RelationType::UsedFor;
  pred["sym#0"].relations[0].type = RelationType::UsedFor;
  CHECK(score({s}, pred, {.symmetric_swap = true}).rel.tp == 0);
}

TEST_CASE("symmetric swap also canonicalizes endpoint types on shared spans") {
  // Both endpoints cover the same span with different entity types; the
  // prediction states the pair in the opposite order.
  Sample s;
  s.id = "pal#0";
  s.tokens = {"x", "y"};
  s.entities = {{0, 1, EntityType::Method, "x"}, {0, 1, EntityType::Task, "x"}};
  s.relations = {{0, 1, RelationType::Compare}};
  s.validate("palindromic fixture");

  SamplePrediction p;
  PredictedRelation pr;
  pr.subj_start = pr.obj_start = 0;
  pr.subj_end = pr.obj_end = 1;
  pr.type = RelationType::Compare;
  pr.subject_type = EntityType::Task;
  pr.object_type = EntityType::Method;
  p.relations.push_back(pr);
  PredictionSet pred;
  pred["pal#0"] = p;

  auto on = score({s}, pred, {.symmetric_swap = true});
  CHECK(on.rel.tp == 1);
  CHECK(on.rel_plus.tp == 1);
  auto off = score({s}, pred, {.symmetric_swap = false});
  CHECK(off.rel.tp == 1);       // same spans either way
  CHECK(off.rel_plus.tp == 0);  // but the typing no longer swaps
}

TEST_CASE("prediction validation") {
  auto gold = testing::random_scored_corpus(2, 77);

  SUBCASE("unknown sample id") {
    PredictionSet pred;
    pred["nope#9"] = {};
    CHECK_THROWS_WITH_AS(score(gold, pred), doctest::Contains("unknown sample id"), Error);
  }
  SUBCASE("span out of bounds") {
    PredictionSet pred;
    SamplePrediction p;
    p.entities.push_back({0, 10000, EntityType::Task, ""});
    pred[gold.front().id] = p;
    CHECK_THROWS_WITH_AS(score(gold, pred), doctest::Contains("out of bounds"), Error);
  }
}

TEST_CASE("prediction files parse and merge by id") {
  auto path = temp_file("preds.jsonl");
  write_file(path.string(),
             R"({"id":"a#0","entities":[[0,1,"Task"]],"relations":[{"subject":[0,1],"object":[2,3],"type":"Used-for","subject_type":"Task","object_type":"Method"}]})"
             "\n"
             R"({"id":"a#0","entities":[[2,3,"Method"]]})"
             "\n");
  auto preds = load_predictions(path.string());
  REQUIRE(preds.count("a#0") == 1);
  CHECK(preds["a#0"].entities.size() == 2);
  REQUIRE(preds["a#0"].relations.size() == 1);
  CHECK(preds["a#0"].relations[0].subject_type == EntityType::Task);
  CHECK(preds["a#0"].relations[0].object_type == EntityType::Method);

  write_file(path.string(), R"({"id":"a#0","entities":[[0,1,"NotAType"]]})" "\n");
  CHECK_THROWS_AS(load_predictions(path.string()), Error);
}

TEST_CASE("rel+ falls back to predicted entity types by span") {
  Sample s;
  s.id = "fb#0";
  s.tokens = {"x", "y", "z"};
  s.entities = {{0, 1, EntityType::Task, "x"}, {2, 3, EntityType::Method, "z"}};
  s.relations = {{0, 1, RelationType::UsedFor}};
  s.validate("fb fixture");

  SamplePrediction p;
  p.entities = s.entities;  // correct spans and types
  PredictedRelation pr;
  pr.subj_start = 0;
  pr.subj_end = 1;
  pr.obj_start = 2;
  pr.obj_end = 3;
  pr.type = RelationType::UsedFor;  // no explicit endpoint types
  p.relations.push_back(pr);
  PredictionSet pred;
  pred["fb#0"] = p;
  auto report = score({s}, pred);
  CHECK(report.rel.tp == 1);
  CHECK(report.rel_plus.tp == 1);

  // Wrong predicted entity type breaks Rel+ but not Rel.
  pred["fb#0"].entities[0].type = EntityType::Metric;
  report = score({s}, pred);
  CHECK(report.rel.tp == 1);
  CHECK(report.rel_plus.tp == 0);
}
